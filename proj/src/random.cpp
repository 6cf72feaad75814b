#include "ncguard/random.hpp"

#include <stdexcept>
#include <vector>

namespace ncguard {

Rng derive_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                    0x6e63u};
  return Rng(seq);
}

std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: bound must be positive");
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % bound;
  }
}

mpz_class uniform_below(Rng& rng, const mpz_class& bound) {
  if (sgn(bound) <= 0) throw std::invalid_argument("uniform_below: bound must be positive");
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  const std::size_t words = (bits + 63) / 64;
  const unsigned top_bits = static_cast<unsigned>(bits - (words - 1) * 64);
  const std::uint64_t top_mask = top_bits == 64 ? ~0ULL : ((1ULL << top_bits) - 1);
  std::vector<std::uint64_t> buf(words);
  mpz_class out;
  for (;;) {
    for (auto& w : buf) w = rng();
    buf.back() &= top_mask;  // most significant word (least-significant-first order)
    mpz_import(out.get_mpz_t(), words, -1, sizeof(std::uint64_t), 0, 0, buf.data());
    if (out < bound) return out;
  }
}

bool bernoulli(Rng& rng, double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return u < p;
}

}  // namespace ncguard
