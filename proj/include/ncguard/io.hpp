#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "ncguard/analytic.hpp"
#include "ncguard/epidemic.hpp"
#include "ncguard/modmath.hpp"
#include "ncguard/overhead.hpp"
#include "ncguard/sigscheme.hpp"

namespace ncguard::io {

/// "0x..." lowercase hex.
std::string to_hex(const modmath::Int& v);
/// Accepts "0x"-prefixed hex or plain decimal.
modmath::Int parse_int(const std::string& text);

std::string sha256_hex(std::span<const std::uint8_t> bytes);

// Key-value documents (JSON). Field names are part of the file format.
std::string params_to_json(const modmath::GroupParams& params);
modmath::GroupParams params_from_json(const std::string& text);

std::string private_key_to_json(const sig::PrivateKey& key, const std::string& file_digest = {});
sig::PrivateKey private_key_from_json(const std::string& text);
std::string public_key_to_json(const sig::PublicKey& key, const std::string& file_digest = {});
sig::PublicKey public_key_from_json(const std::string& text);

/// `file_bytes` lets a decoder trim the padding of the last packet.
std::string signature_to_json(const sig::FileSignature& sig, std::uint64_t file_bytes = 0);
sig::FileSignature signature_from_json(const std::string& text, std::uint64_t* file_bytes = nullptr);

// CSV emitters. Numbers use a fixed %.12g rendering so reruns are byte-identical.
std::string format_number(double v);

struct BlockingRow {
  double p_b;
  epidemic::SimMode mode;
  epidemic::ListMode list_mode;
  epidemic::BlockingEstimate estimate;
};
std::string blocking_csv(const std::vector<BlockingRow>& rows);
std::string series_csv(const epidemic::SeriesEstimate& series);
std::string psi_csv(const std::vector<analytic::BlockingPoint>& points);
std::string expected_contamination_csv(const std::vector<analytic::ContaminationPoint>& points);

/// p_n,cost_packet,cost_e2e,cost_generation_G<g>..., then raw (pre-clamp) diagnostics.
std::string cost_csv(const overhead::CostModelParams& params, const std::vector<std::uint64_t>& generation_sizes,
                     double grid_step);

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path);
std::string read_text(const std::filesystem::path& path);
void write_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace ncguard::io
