#include "ncguard/rlnc.hpp"

#include <algorithm>
#include <stdexcept>

#include "ncguard/errors.hpp"

namespace ncguard::rlnc {

namespace {

Int reduce(Int x, const Int& p) {
  x %= p;
  if (sgn(x) < 0) x += p;
  return x;
}

void check_same_shape(std::span<const CodedPacket> packets) {
  if (packets.empty()) return;
  const auto& first = packets.front();
  for (const auto& pk : packets) {
    if (pk.p() != first.p() || pk.m() != first.m() || pk.size() != first.size())
      throw DimensionMismatch("packets differ in field, generation size or length");
  }
}

void put_be(std::vector<std::uint8_t>& out, std::uint64_t v, std::size_t width) {
  for (std::size_t i = width; i-- > 0;) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_int(std::vector<std::uint8_t>& out, const Int& v, std::size_t width) {
  std::vector<std::uint8_t> buf(width, 0);
  if (sgn(v) != 0) {
    std::size_t count = 0;
    std::vector<std::uint8_t> tmp((mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8);
    mpz_export(tmp.data(), &count, 1, 1, 1, 0, v.get_mpz_t());
    std::copy(tmp.begin(), tmp.begin() + static_cast<std::ptrdiff_t>(count),
              buf.end() - static_cast<std::ptrdiff_t>(count));
  }
  out.insert(out.end(), buf.begin(), buf.end());
}

Int get_int(std::span<const std::uint8_t> bytes) {
  Int v;
  if (!bytes.empty()) mpz_import(v.get_mpz_t(), bytes.size(), 1, 1, 1, 0, bytes.data());
  return v;
}

std::uint64_t get_be(std::span<const std::uint8_t> bytes) {
  std::uint64_t v = 0;
  for (auto b : bytes) v = (v << 8) | b;
  return v;
}

std::size_t width_for(const Int& p) { return (modmath::bit_length(p) + 7) / 8; }

}  // namespace

FilePayload::FilePayload(Int p, std::vector<Vector> rows) : p_(std::move(p)), rows_(std::move(rows)) {
  if (p_ < 2) throw std::invalid_argument("FilePayload: field prime must be >= 2");
  if (rows_.empty() || rows_.front().empty())
    throw std::invalid_argument("FilePayload: need m >= 1 and l >= 1");
  const std::size_t l = rows_.front().size();
  for (auto& row : rows_) {
    if (row.size() != l) throw DimensionMismatch("FilePayload: ragged rows");
    for (auto& x : row) x = reduce(x, p_);
  }
}

CodedPacket::CodedPacket(Int p, std::size_t m, Vector w) : p_(std::move(p)), m_(m), w_(std::move(w)) {
  if (p_ < 2) throw std::invalid_argument("CodedPacket: field prime must be >= 2");
  if (m_ == 0 || w_.size() <= m_) throw DimensionMismatch("CodedPacket: need m >= 1 and l >= 1");
  for (auto& x : w_) x = reduce(x, p_);
}

bool CodedPacket::is_zero() const {
  return std::all_of(w_.begin(), w_.end(), [](const Int& x) { return sgn(x) == 0; });
}

std::vector<CodedPacket> augment(const FilePayload& file) {
  std::vector<CodedPacket> out;
  out.reserve(file.m());
  for (std::size_t i = 0; i < file.m(); ++i) {
    Vector w(file.m() + file.l(), Int(0));
    w[i] = 1;
    std::copy(file.rows()[i].begin(), file.rows()[i].end(), w.begin() + static_cast<std::ptrdiff_t>(file.m()));
    out.emplace_back(file.p(), file.m(), std::move(w));
  }
  return out;
}

CodedPacket recombine(std::span<const CodedPacket> packets, std::span<const Int> coeffs) {
  if (packets.empty()) throw std::invalid_argument("recombine: no packets");
  if (coeffs.size() != packets.size()) throw DimensionMismatch("recombine: coefficient count");
  check_same_shape(packets);
  const Int& p = packets.front().p();
  Vector acc(packets.front().size(), Int(0));
  for (std::size_t k = 0; k < packets.size(); ++k) {
    const Int c = reduce(coeffs[k], p);
    if (sgn(c) == 0) continue;
    const auto& w = packets[k].w();
    for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += c * w[j];
  }
  for (auto& x : acc) x %= p;
  return {p, packets.front().m(), std::move(acc)};
}

CodedPacket random_recombine(std::span<const CodedPacket> packets, Rng& rng) {
  if (packets.empty()) throw std::invalid_argument("random_recombine: no packets");
  Vector coeffs;
  coeffs.reserve(packets.size());
  for (std::size_t k = 0; k < packets.size(); ++k) coeffs.push_back(uniform_below(rng, packets.front().p()));
  return recombine(packets, coeffs);
}

std::vector<std::size_t> reduce_rows(Matrix& rows, const Int& p) {
  std::vector<std::size_t> pivots;
  if (rows.empty()) return pivots;
  const std::size_t cols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t sel = r;
    while (sel < rows.size() && sgn(rows[sel][c]) == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    const Int inv = modmath::mod_inverse(rows[r][c], p);
    for (std::size_t j = c; j < cols; ++j) rows[r][j] = rows[r][j] * inv % p;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || sgn(rows[i][c]) == 0) continue;
      const Int f = rows[i][c];
      for (std::size_t j = c; j < cols; ++j) {
        rows[i][j] = (rows[i][j] - f * rows[r][j]) % p;
        if (sgn(rows[i][j]) < 0) rows[i][j] += p;
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

Vector random_null_vector(const Matrix& rows, std::size_t cols, const Int& p, Rng& rng) {
  Matrix work = rows;
  const auto pivots = reduce_rows(work, p);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  if (pivots.size() == cols) return {};
  for (;;) {
    Vector u(cols, Int(0));
    for (std::size_t c = 0; c < cols; ++c)
      if (!is_pivot[c]) u[c] = uniform_below(rng, p);
    // pivot variable of row r = -sum(free entries of row r * free values)
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      Int s = 0;
      for (std::size_t c = pivots[r] + 1; c < cols; ++c)
        if (!is_pivot[c] && sgn(work[r][c]) != 0) s += work[r][c] * u[c];
      s = -s % p;
      if (sgn(s) < 0) s += p;
      u[pivots[r]] = s;
    }
    if (std::any_of(u.begin(), u.end(), [](const Int& x) { return sgn(x) != 0; })) return u;
  }
}

Int dot(std::span<const Int> a, std::span<const Int> b, const Int& p) {
  if (a.size() != b.size()) throw DimensionMismatch("dot: length mismatch");
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return reduce(s, p);
}

std::size_t rank(std::span<const CodedPacket> packets) {
  if (packets.empty()) return 0;
  check_same_shape(packets);
  Matrix rows;
  rows.reserve(packets.size());
  for (const auto& pk : packets) rows.push_back(pk.w());
  return reduce_rows(rows, packets.front().p()).size();
}

FilePayload decode(std::span<const CodedPacket> packets) {
  if (packets.empty()) throw std::invalid_argument("decode: no packets");
  check_same_shape(packets);
  const Int& p = packets.front().p();
  const std::size_t m = packets.front().m();
  Matrix rows;
  for (const auto& pk : packets) rows.push_back(pk.w());
  const auto pivots = reduce_rows(rows, p);
  const auto prefix_rank = static_cast<std::size_t>(
      std::count_if(pivots.begin(), pivots.end(), [m](std::size_t c) { return c < m; }));
  if (prefix_rank < m) throw InsufficientRank(prefix_rank, m);
  if (pivots.size() > m) throw InconsistentPackets();
  // RREF with pivots 0..m-1: row i = (e_i, original row i)
  std::vector<Vector> out;
  out.reserve(m);
  for (std::size_t i = 0; i < m; ++i) out.emplace_back(rows[i].begin() + static_cast<std::ptrdiff_t>(m), rows[i].end());
  return {p, std::move(out)};
}

CodedPacket random_packet(const Int& p, std::size_t m, std::size_t l, Rng& rng) {
  Vector w;
  w.reserve(m + l);
  for (std::size_t j = 0; j < m + l; ++j) w.push_back(uniform_below(rng, p));
  return {p, m, std::move(w)};
}

FilePayload random_file(const Int& p, std::size_t m, std::size_t l, Rng& rng) {
  std::vector<Vector> rows(m);
  for (auto& row : rows) {
    row.reserve(l);
    for (std::size_t j = 0; j < l; ++j) row.push_back(uniform_below(rng, p));
  }
  return {p, std::move(rows)};
}

std::vector<std::uint8_t> encode_packet(const CodedPacket& packet) {
  const std::size_t width = width_for(packet.p());
  if (width > 0xFFFF) throw std::invalid_argument("encode_packet: field too large");
  std::vector<std::uint8_t> out = {'N', 'C', 'G', '1'};
  out.reserve(4 + 2 + width + 8 + width * packet.size());
  put_be(out, width, 2);
  put_int(out, packet.p(), width);
  put_be(out, packet.m(), 4);
  put_be(out, packet.l(), 4);
  for (const auto& x : packet.w()) put_int(out, x, width);
  return out;
}

CodedPacket decode_packet(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 6 || !std::equal(bytes.begin(), bytes.begin() + 4, "NCG1"))
    throw FormatError("packet: bad magic");
  const std::size_t width = get_be(bytes.subspan(4, 2));
  if (width == 0) throw FormatError("packet: zero element width");
  std::size_t off = 6;
  if (bytes.size() < off + width + 8) throw FormatError("packet: truncated header");
  const Int p = get_int(bytes.subspan(off, width));
  off += width;
  if (width_for(p) != width || p < 2) throw FormatError("packet: width does not match p");
  const std::size_t m = get_be(bytes.subspan(off, 4));
  const std::size_t l = get_be(bytes.subspan(off + 4, 4));
  off += 8;
  if (m == 0 || l == 0) throw FormatError("packet: m and l must be positive");
  if (bytes.size() != off + (m + l) * width) throw FormatError("packet: body length mismatch");
  Vector w;
  w.reserve(m + l);
  for (std::size_t j = 0; j < m + l; ++j, off += width) {
    Int x = get_int(bytes.subspan(off, width));
    if (x >= p) throw FormatError("packet: element out of field range");
    w.push_back(std::move(x));
  }
  return {p, m, std::move(w)};
}

std::size_t symbol_bytes(const Int& p) { return (modmath::bit_length(p) - 1) / 8; }

FilePayload payload_from_bytes(std::span<const std::uint8_t> bytes, const Int& p, std::size_t m,
                               std::size_t min_l) {
  const std::size_t sb = symbol_bytes(p);
  if (sb == 0) throw std::invalid_argument("payload_from_bytes: field must exceed 256");
  if (m == 0) throw std::invalid_argument("payload_from_bytes: m must be positive");
  const std::size_t symbols = (bytes.size() + sb - 1) / sb;
  std::size_t l = std::max<std::size_t>({(symbols + m - 1) / m, min_l, 1});
  std::vector<Vector> rows(m, Vector(l, Int(0)));
  for (std::size_t s = 0; s < symbols; ++s) {
    const std::size_t begin = s * sb;
    const std::size_t end = std::min(bytes.size(), begin + sb);
    std::vector<std::uint8_t> chunk(sb, 0);
    std::copy(bytes.begin() + static_cast<std::ptrdiff_t>(begin), bytes.begin() + static_cast<std::ptrdiff_t>(end), chunk.begin());
    rows[s / l][s % l] = get_int(chunk);
  }
  return {p, std::move(rows)};
}

std::vector<std::uint8_t> bytes_from_payload(const FilePayload& file, std::size_t byte_length) {
  const std::size_t sb = symbol_bytes(file.p());
  if (sb == 0) throw std::invalid_argument("bytes_from_payload: field must exceed 256");
  if (byte_length > sb * file.m() * file.l())
    throw std::invalid_argument("bytes_from_payload: payload shorter than requested length");
  std::vector<std::uint8_t> out;
  out.reserve(sb * file.m() * file.l());
  for (const auto& row : file.rows())
    for (const auto& x : row) {
      if (modmath::bit_length(x) > 8 * sb) throw FormatError("payload symbol exceeds byte packing");
      put_int(out, x, sb);
    }
  out.resize(byte_length);
  return out;
}

}  // namespace ncguard::rlnc
