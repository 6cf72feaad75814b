#include "ncguard/io.hpp"

#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>
#include <stdexcept>

#include <json.hpp>
#include <openssl/evp.h>

#include "ncguard/errors.hpp"

namespace ncguard::io {

using nlohmann::json;

namespace {

json ints_to_json(const rlnc::Vector& v) {
  json arr = json::array();
  for (const auto& x : v) arr.push_back(to_hex(x));
  return arr;
}

rlnc::Vector ints_from_json(const json& arr) {
  if (!arr.is_array()) throw FormatError("expected an array of integers");
  rlnc::Vector out;
  out.reserve(arr.size());
  for (const auto& e : arr) out.push_back(parse_int(e.get<std::string>()));
  return out;
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed document: ") + e.what());
  }
}

void put_group(json& doc, const modmath::GroupParams& params) {
  doc["p"] = to_hex(params.p);
  doc["q"] = to_hex(params.q);
  doc["g"] = to_hex(params.g);
  doc["seed"] = params.seed;
}

modmath::GroupParams get_group(const json& doc) {
  try {
    modmath::GroupParams params;
    params.p = parse_int(doc.at("p").get<std::string>());
    params.q = parse_int(doc.at("q").get<std::string>());
    params.g = parse_int(doc.at("g").get<std::string>());
    if (doc.contains("seed")) params.seed = doc.at("seed").get<std::uint64_t>();
    return params;
  } catch (const json::exception& e) {
    throw FormatError(std::string("group parameters: ") + e.what());
  }
}

}  // namespace

std::string to_hex(const modmath::Int& v) {
  if (sgn(v) < 0) return "-" + to_hex(-v);
  return "0x" + v.get_str(16);
}

modmath::Int parse_int(const std::string& text) {
  modmath::Int v;
  std::string body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.erase(0, 1);
  }
  int base = 10;
  if (body.size() > 2 && body[0] == '0' && (body[1] == 'x' || body[1] == 'X')) {
    base = 16;
    body.erase(0, 2);
  }
  if (body.empty() || v.set_str(body, base) != 0) throw FormatError("not an integer: " + text);
  return negative ? modmath::Int(-v) : v;
}

std::string sha256_hex(std::span<const std::uint8_t> bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("sha256 failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

std::string params_to_json(const modmath::GroupParams& params) {
  json doc;
  put_group(doc, params);
  return doc.dump(2) + "\n";
}

modmath::GroupParams params_from_json(const std::string& text) { return get_group(parse(text)); }

std::string private_key_to_json(const sig::PrivateKey& key, const std::string& file_digest) {
  json doc;
  put_group(doc, key.params);
  doc["alphas"] = ints_to_json(key.alphas);
  doc["file_digest"] = file_digest;
  return doc.dump(2) + "\n";
}

sig::PrivateKey private_key_from_json(const std::string& text) {
  const json doc = parse(text);
  if (!doc.contains("alphas")) throw FormatError("private key: missing alphas");
  return {get_group(doc), ints_from_json(doc["alphas"])};
}

std::string public_key_to_json(const sig::PublicKey& key, const std::string& file_digest) {
  json doc;
  put_group(doc, key.params);
  doc["hs"] = ints_to_json(key.hs);
  doc["file_digest"] = file_digest;
  return doc.dump(2) + "\n";
}

sig::PublicKey public_key_from_json(const std::string& text) {
  const json doc = parse(text);
  if (!doc.contains("hs")) throw FormatError("public key: missing hs");
  return {get_group(doc), ints_from_json(doc["hs"])};
}

std::string signature_to_json(const sig::FileSignature& sig, std::uint64_t file_bytes) {
  json doc;
  doc["xs"] = ints_to_json(sig.xs);
  doc["file_digest"] = sig.file_digest;
  doc["file_bytes"] = file_bytes;
  return doc.dump(2) + "\n";
}

sig::FileSignature signature_from_json(const std::string& text, std::uint64_t* file_bytes) {
  const json doc = parse(text);
  if (!doc.contains("xs")) throw FormatError("signature: missing xs");
  sig::FileSignature sig{ints_from_json(doc["xs"]), doc.value("file_digest", std::string{})};
  if (file_bytes != nullptr) *file_bytes = doc.value("file_bytes", std::uint64_t{0});
  return sig;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string blocking_csv(const std::vector<BlockingRow>& rows) {
  std::ostringstream out;
  out << "p_b,mode,list_mode,trials,blocked_mean,blocked_se\n";
  for (const auto& r : rows) {
    out << format_number(r.p_b) << ',' << epidemic::to_string(r.mode) << ',' << epidemic::to_string(r.list_mode)
        << ',' << r.estimate.trials << ',' << format_number(r.estimate.estimate) << ','
        << format_number(r.estimate.std_error) << '\n';
  }
  return out.str();
}

std::string series_csv(const epidemic::SeriesEstimate& series) {
  std::ostringstream out;
  out << "t,c_mean,c_se\n";
  for (const auto& pt : series.points)
    out << pt.t << ',' << format_number(pt.mean) << ',' << format_number(pt.std_error) << '\n';
  return out.str();
}

std::string psi_csv(const std::vector<analytic::BlockingPoint>& points) {
  std::ostringstream out;
  out << "p_b,psi_static,psi_evolving\n";
  for (const auto& pt : points)
    out << format_number(pt.p_b) << ',' << format_number(pt.psi_static) << ',' << format_number(pt.psi_evolving)
        << '\n';
  return out.str();
}

std::string expected_contamination_csv(const std::vector<analytic::ContaminationPoint>& points) {
  std::ostringstream out;
  out << "t,e_c_static,e_c_evolving\n";
  for (const auto& pt : points)
    out << pt.t << ',' << format_number(pt.e_c_static) << ',' << format_number(pt.e_c_evolving) << '\n';
  return out.str();
}

std::string cost_csv(const overhead::CostModelParams& params, const std::vector<std::uint64_t>& generation_sizes,
                     double grid_step) {
  std::ostringstream out;
  out << "p_n,cost_packet,cost_e2e";
  for (auto g : generation_sizes) out << ",cost_generation_G" << g;
  out << ",raw_packet";
  for (auto g : generation_sizes) out << ",raw_generation_G" << g;
  out << '\n';
  overhead::CostModelParams at = params;
  for (double p : overhead::p_n_grid(grid_step)) {
    at.p_n = p;
    out << format_number(p) << ',' << format_number(overhead::packet_scheme_cost(at)) << ','
        << format_number(overhead::e2e_cost(p));
    for (auto g : generation_sizes) {
      at.G = g;
      out << ',' << format_number(overhead::generation_scheme_cost(at));
    }
    out << ',' << format_number(overhead::packet_scheme_cost_raw(at));
    for (auto g : generation_sizes) {
      at.G = g;
      out << ',' << format_number(overhead::generation_scheme_cost_raw(at));
    }
    out << '\n';
  }
  return out.str();
}

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

}  // namespace ncguard::io
