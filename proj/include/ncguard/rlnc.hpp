#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ncguard/modmath.hpp"
#include "ncguard/random.hpp"

namespace ncguard::rlnc {

using Int = modmath::Int;
using Vector = std::vector<Int>;

/// m packets of l symbols each, entries reduced into [0, p).
class FilePayload {
 public:
  FilePayload(Int p, std::vector<Vector> rows);

  const Int& p() const noexcept { return p_; }
  std::size_t m() const noexcept { return rows_.size(); }
  std::size_t l() const noexcept { return rows_.front().size(); }
  const std::vector<Vector>& rows() const noexcept { return rows_; }

  friend bool operator==(const FilePayload&, const FilePayload&) = default;

 private:
  Int p_;
  std::vector<Vector> rows_;
};

/// A vector in F_p^(m+l); the first m entries are the global coding vector.
class CodedPacket {
 public:
  CodedPacket(Int p, std::size_t m, Vector w);

  const Int& p() const noexcept { return p_; }
  std::size_t m() const noexcept { return m_; }
  std::size_t l() const noexcept { return w_.size() - m_; }
  std::size_t size() const noexcept { return w_.size(); }
  const Vector& w() const noexcept { return w_; }
  std::span<const Int> coding_vector() const noexcept { return {w_.data(), m_}; }
  std::span<const Int> payload() const noexcept { return {w_.data() + m_, w_.size() - m_}; }
  bool is_zero() const;

  friend bool operator==(const CodedPacket&, const CodedPacket&) = default;

 private:
  Int p_;
  std::size_t m_;
  Vector w_;
};

/// v_i = (e_i, row_i) for every row of the file.
std::vector<CodedPacket> augment(const FilePayload& file);

CodedPacket recombine(std::span<const CodedPacket> packets, std::span<const Int> coeffs);

/// Coefficients iid uniform on F_p (zero vectors possible).
CodedPacket random_recombine(std::span<const CodedPacket> packets, Rng& rng);

std::size_t rank(std::span<const CodedPacket> packets);

/// Throws InsufficientRank when the coding vectors have rank < m and
/// InconsistentPackets when no file's augmentation spans the packets.
FilePayload decode(std::span<const CodedPacket> packets);

/// Uniformly random vector in F_p^(m+l) (format-valid garbage).
CodedPacket random_packet(const Int& p, std::size_t m, std::size_t l, Rng& rng);

/// Uniformly random file of m x l symbols.
FilePayload random_file(const Int& p, std::size_t m, std::size_t l, Rng& rng);

// --- dense linear algebra over F_p ------------------------------------------

using Matrix = std::vector<Vector>;

/// In-place Gauss-Jordan to reduced row echelon form; returns pivot columns.
/// Pivots are chosen as the first row with a nonzero entry in each column.
std::vector<std::size_t> reduce_rows(Matrix& rows, const Int& p);

/// Uniform random nonzero element of the null space {u : rows * u = 0}.
/// Returns an empty vector when the null space is trivial.
Vector random_null_vector(const Matrix& rows, std::size_t cols, const Int& p, Rng& rng);

Int dot(std::span<const Int> a, std::span<const Int> b, const Int& p);

// --- packet wire format -----------------------------------------------------
//
//   "NCG1" | u16 W | p (W bytes) | u32 m | u32 l | (m+l) x W-byte elements
//
// All integers big-endian; W = ceil(bits(p) / 8).

std::vector<std::uint8_t> encode_packet(const CodedPacket& packet);
CodedPacket decode_packet(std::span<const std::uint8_t> bytes);

// --- byte files <-> payloads ------------------------------------------------

/// Bytes carried per symbol: floor((bits(p) - 1) / 8), so every symbol is < p.
std::size_t symbol_bytes(const Int& p);

/// Packs bytes into an m-row payload (zero padded). l is the smallest row
/// length holding the data, raised to `min_l` if that is larger.
FilePayload payload_from_bytes(std::span<const std::uint8_t> bytes, const Int& p, std::size_t m,
                               std::size_t min_l = 0);

std::vector<std::uint8_t> bytes_from_payload(const FilePayload& file, std::size_t byte_length);

}  // namespace ncguard::rlnc
