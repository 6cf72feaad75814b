#include "ncguard/modmath.hpp"

#include <array>
#include <stdexcept>

#include "ncguard/errors.hpp"

namespace ncguard::modmath {

namespace {

// n - 1 = d * 2^s with d odd; returns true if `a` does not witness compositeness.
bool miller_rabin_round(const Int& n, const Int& d, unsigned long s, const Int& a) {
  const Int n_minus_1 = n - 1;
  Int x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n_minus_1) return true;
  for (unsigned long r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == n_minus_1) return true;
    if (x == 1) return false;
  }
  return false;
}

Int random_bits_exact(Rng& rng, unsigned bits) {
  // uniform in [2^(bits-1), 2^bits)
  Int low = 1;
  low <<= (bits - 1);
  return low + uniform_below(rng, low);
}

}  // namespace

std::size_t bit_length(const Int& n) {
  if (sgn(n) == 0) return 0;
  return mpz_sizeinbase(n.get_mpz_t(), 2);
}

Int mod_exp(const Int& base, const Int& exp, const Int& modulus) {
  if (modulus < 2) throw std::invalid_argument("mod_exp: modulus must be >= 2");
  if (sgn(exp) < 0) throw std::invalid_argument("mod_exp: exponent must be non-negative");
  Int b = base % modulus;
  if (sgn(b) < 0) b += modulus;
  Int out;
  mpz_powm(out.get_mpz_t(), b.get_mpz_t(), exp.get_mpz_t(), modulus.get_mpz_t());
  return out;
}

Int mod_inverse(const Int& a, const Int& p) {
  if (p < 2) throw std::invalid_argument("mod_inverse: modulus must be >= 2");
  Int r = a % p;
  if (sgn(r) < 0) r += p;
  if (sgn(r) == 0) throw NoInverse();
  Int out;
  if (mpz_invert(out.get_mpz_t(), r.get_mpz_t(), p.get_mpz_t()) == 0) throw NoInverse();
  return out;
}

bool is_prime(const Int& n, unsigned rounds) {
  if (n < 2) return false;
  static constexpr std::array<unsigned, 12> kSmall = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (unsigned sp : kSmall) {
    if (n == sp) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), sp) != 0) return false;
  }
  Int d = n - 1;
  const unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

  // The first 12 prime bases are a deterministic witness set below 3.3e24.
  if (bit_length(n) <= 64) {
    for (unsigned a : kSmall) {
      if (!miller_rabin_round(n, d, s, Int(a))) return false;
    }
    return true;
  }
  Rng rng = derive_rng(mpz_get_ui(n.get_mpz_t()), bit_length(n));
  const Int span = n - 3;  // witnesses in [2, n-2]
  for (unsigned r = 0; r < rounds; ++r) {
    const Int a = uniform_below(rng, span) + 2;
    if (!miller_rabin_round(n, d, s, a)) return false;
  }
  return true;
}

Int find_subgroup_generator(const Int& p, const Int& q, Rng& rng) {
  if (p < 2 || q < 3) throw std::invalid_argument("find_subgroup_generator: p, q too small");
  const Int q_minus_1 = q - 1;
  if (!mpz_divisible_p(q_minus_1.get_mpz_t(), p.get_mpz_t()))
    throw std::invalid_argument("find_subgroup_generator: p must divide q-1");
  const Int cofactor = q_minus_1 / p;
  for (;;) {
    const Int h = uniform_below(rng, q_minus_1) + 1;  // unit in [1, q-1]
    Int g = mod_exp(h, cofactor, q);
    if (g != 1) return g;
  }
}

GroupParams generate_params(unsigned p_bits, unsigned q_bits, std::uint64_t seed,
                            std::size_t max_attempts) {
  if (p_bits < 2 || p_bits >= q_bits)
    throw std::invalid_argument("generate_params: require 2 <= p_bits < q_bits");
  Rng rng = derive_rng(seed, 0x7061726d73ULL);

  Int q_lo = 1;
  q_lo <<= (q_bits - 1);
  const Int q_hi = (q_lo << 1) - 1;  // inclusive

  std::size_t attempts = 0;
  while (attempts < max_attempts) {
    Int p;
    do {
      p = random_bits_exact(rng, p_bits);
      ++attempts;
    } while (!is_prime(p) && attempts < max_attempts);
    if (!is_prime(p)) break;

    // even k with q_lo <= k*p + 1 <= q_hi, i.e. k = 2j
    Int k_min;
    mpz_cdiv_q(k_min.get_mpz_t(), Int(q_lo - 1).get_mpz_t(), p.get_mpz_t());
    Int k_max = (q_hi - 1) / p;
    Int j_min;
    mpz_cdiv_q_ui(j_min.get_mpz_t(), k_min.get_mpz_t(), 2);
    Int j_max = k_max / 2;
    if (j_min < 1) j_min = 1;
    if (j_max < j_min) continue;
    const Int j_span = j_max - j_min + 1;

    // A bounded number of q candidates per p, then a fresh p.
    const std::size_t per_p = 4 * static_cast<std::size_t>(q_bits) + 16;
    for (std::size_t tries = 0; tries < per_p && attempts < max_attempts; ++tries) {
      ++attempts;
      const Int j = j_min + uniform_below(rng, j_span);
      const Int q = 2 * j * p + 1;
      if (!is_prime(q)) continue;
      GroupParams params{p, q, find_subgroup_generator(p, q, rng), seed};
      return params;
    }
  }
  throw SearchExhausted(attempts);
}

bool validate(const GroupParams& params) {
  const auto& [p, q, g, seed] = params;
  if (!is_prime(p) || !is_prime(q)) return false;
  if (p >= q) return false;
  const Int q_minus_1 = q - 1;
  if (!mpz_divisible_p(q_minus_1.get_mpz_t(), p.get_mpz_t())) return false;
  if (g < 2 || g > q - 1) return false;
  return mod_exp(g, p, q) == 1;
}

}  // namespace ncguard::modmath
