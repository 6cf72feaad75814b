#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ncguard/analytic.hpp"
#include "ncguard/cli.hpp"
#include "ncguard/epidemic.hpp"
#include "ncguard/errors.hpp"
#include "ncguard/modmath.hpp"
#include "ncguard/overhead.hpp"
#include "ncguard/rlnc.hpp"
#include "ncguard/sigscheme.hpp"

namespace py = pybind11;
using namespace ncguard;

// Python int <-> mpz_class through a base-16 string.
namespace pybind11::detail {
template <>
struct type_caster<mpz_class> {
  PYBIND11_TYPE_CASTER(mpz_class, const_name("int"));

  bool load(handle src, bool) {
    if (!PyLong_Check(src.ptr())) return false;
    const auto text = py::str(py::module_::import("builtins").attr("hex")(src)).cast<std::string>();
    const bool negative = text[0] == '-';
    value.set_str(text.substr(negative ? 3 : 2), 16);
    if (negative) value = -value;
    return true;
  }

  static handle cast(const mpz_class& v, return_value_policy, handle) {
    return PyLong_FromString(v.get_str(16).c_str(), nullptr, 16);
  }
};
}  // namespace pybind11::detail

namespace {

std::vector<std::uint8_t> to_vec(const py::bytes& b) {
  const std::string s = b;
  return {s.begin(), s.end()};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Pollution-resistant network coding: codec, signatures, simulation and cost models";

  auto base = py::register_exception<Error>(m, "NcguardError", PyExc_RuntimeError);
  py::register_exception<InsufficientRank>(m, "InsufficientRank", base.ptr());
  py::register_exception<InconsistentPackets>(m, "InconsistentPackets", base.ptr());
  py::register_exception<FormatError>(m, "FormatError", base.ptr());
  py::register_exception<SearchExhausted>(m, "SearchExhausted", base.ptr());
  py::register_exception<ConditioningStarved>(m, "ConditioningStarved", base.ptr());

  py::class_<Rng>(m, "Rng")
      .def(py::init([](std::uint64_t seed, std::uint64_t index) { return derive_rng(seed, index); }), py::arg("seed"),
           py::arg("index") = 0);

  // --- group parameters ------------------------------------------------------
  py::class_<modmath::GroupParams>(m, "GroupParams")
      .def(py::init([](mpz_class p, mpz_class q, mpz_class g) { return modmath::GroupParams{p, q, g, 0}; }),
           py::arg("p"), py::arg("q"), py::arg("g"))
      .def_readonly("p", &modmath::GroupParams::p)
      .def_readonly("q", &modmath::GroupParams::q)
      .def_readonly("g", &modmath::GroupParams::g)
      .def_readonly("seed", &modmath::GroupParams::seed)
      .def("__eq__", [](const modmath::GroupParams& a, const modmath::GroupParams& b) { return a == b; });
  m.def("generate_params", &modmath::generate_params, py::arg("p_bits"), py::arg("q_bits"), py::arg("seed"),
        py::arg("max_attempts") = modmath::kDefaultMaxAttempts);
  m.def("validate_params", &modmath::validate);
  m.def("mod_exp", &modmath::mod_exp);
  m.def("mod_inverse", &modmath::mod_inverse);
  m.def("is_prime", &modmath::is_prime, py::arg("n"), py::arg("rounds") = 64);

  // --- codec -----------------------------------------------------------------
  py::class_<rlnc::FilePayload>(m, "FilePayload")
      .def(py::init<rlnc::Int, std::vector<rlnc::Vector>>(), py::arg("p"), py::arg("rows"))
      .def_property_readonly("p", &rlnc::FilePayload::p)
      .def_property_readonly("m", &rlnc::FilePayload::m)
      .def_property_readonly("l", &rlnc::FilePayload::l)
      .def_property_readonly("rows", &rlnc::FilePayload::rows)
      .def("__eq__", [](const rlnc::FilePayload& a, const rlnc::FilePayload& b) { return a == b; });
  py::class_<rlnc::CodedPacket>(m, "CodedPacket")
      .def(py::init<rlnc::Int, std::size_t, rlnc::Vector>(), py::arg("p"), py::arg("m"), py::arg("w"))
      .def_property_readonly("p", &rlnc::CodedPacket::p)
      .def_property_readonly("m", &rlnc::CodedPacket::m)
      .def_property_readonly("l", &rlnc::CodedPacket::l)
      .def_property_readonly("w", &rlnc::CodedPacket::w)
      .def("is_zero", &rlnc::CodedPacket::is_zero)
      .def("__eq__", [](const rlnc::CodedPacket& a, const rlnc::CodedPacket& b) { return a == b; })
      .def("__repr__", [](const rlnc::CodedPacket& pk) {
        std::ostringstream os;
        os << "CodedPacket(p=" << pk.p().get_str() << ", w=(";
        for (std::size_t i = 0; i < pk.size(); ++i) os << (i ? ", " : "") << pk.w()[i].get_str();
        os << "))";
        return os.str();
      });
  m.def("augment", &rlnc::augment);
  m.def("recombine", [](const std::vector<rlnc::CodedPacket>& packets, const rlnc::Vector& coeffs) {
    return rlnc::recombine(packets, coeffs);
  });
  m.def("random_recombine", [](const std::vector<rlnc::CodedPacket>& packets, Rng& rng) {
    return rlnc::random_recombine(packets, rng);
  });
  m.def("rank", [](const std::vector<rlnc::CodedPacket>& packets) { return rlnc::rank(packets); });
  m.def("decode", [](const std::vector<rlnc::CodedPacket>& packets) { return rlnc::decode(packets); });
  m.def("random_file", &rlnc::random_file);
  m.def("encode_packet", [](const rlnc::CodedPacket& pk) {
    const auto bytes = rlnc::encode_packet(pk);
    return py::bytes(reinterpret_cast<const char*>(bytes.data()), bytes.size());
  });
  m.def("decode_packet", [](const py::bytes& b) { return rlnc::decode_packet(to_vec(b)); });

  // --- signatures ------------------------------------------------------------
  py::class_<sig::PrivateKey>(m, "PrivateKey")
      .def_readonly("params", &sig::PrivateKey::params)
      .def_readonly("alphas", &sig::PrivateKey::alphas);
  py::class_<sig::PublicKey>(m, "PublicKey")
      .def_readonly("params", &sig::PublicKey::params)
      .def_readonly("hs", &sig::PublicKey::hs);
  py::class_<sig::FileSignature>(m, "FileSignature")
      .def(py::init([](rlnc::Vector xs) { return sig::FileSignature{std::move(xs), {}}; }), py::arg("xs"))
      .def_readonly("xs", &sig::FileSignature::xs);
  m.def("keygen", [](const modmath::GroupParams& params, std::size_t n, Rng& rng) {
    auto pair = sig::keygen(params, n, rng);
    return py::make_tuple(pair.priv, pair.pub);
  });
  m.def("keypair_from_alphas", [](const modmath::GroupParams& params, rlnc::Vector alphas) {
    auto pair = sig::keypair_from_alphas(params, std::move(alphas));
    return py::make_tuple(pair.priv, pair.pub);
  });
  m.def("sign_file", [](const sig::PrivateKey& priv, const std::vector<rlnc::CodedPacket>& augmented, Rng& rng) {
    return sig::sign_file(priv, augmented, rng);
  });
  m.def("verify_packet", &sig::verify_packet);
  m.def("verification_product", &sig::verification_product);
  m.def("refresh_keys", [](const sig::PrivateKey& priv, const sig::PublicKey& pub, double rho, Rng& rng) {
    auto pair = sig::refresh_keys(priv, pub, rho, rng);
    return py::make_tuple(pair.priv, pair.pub);
  });

  // --- closed forms ----------------------------------------------------------
  py::class_<analytic::ModelParams>(m, "ModelParams")
      .def(py::init([](std::int64_t n_total, std::int64_t n_s, std::int64_t n_r, std::int64_t d, double p_b) {
             analytic::ModelParams mp{n_total, n_s, n_r, d, p_b};
             mp.validate();
             return mp;
           }),
           py::arg("n_total"), py::arg("n_s"), py::arg("n_r"), py::arg("d"), py::arg("p_b"));
  m.def("hypergeom_pmf", &analytic::hypergeom_pmf);
  m.def("binom_pmf", &analytic::binom_pmf);
  m.def("blocking_static", [](const analytic::ModelParams& mp) { return analytic::blocking_static(mp); });
  m.def("blocking_evolving", [](const analytic::ModelParams& mp) { return analytic::blocking_evolving(mp); });
  m.def("expected_contaminated_static", &analytic::expected_contaminated_static);
  m.def("expected_contaminated_evolving", &analytic::expected_contaminated_evolving);

  // --- simulation ------------------------------------------------------------
  auto sim_config = [](std::int64_t n_total, std::int64_t n_s, std::int64_t n_r, std::int64_t d, double p_b,
                       const std::string& list_mode, std::uint64_t trials, std::uint64_t seed, unsigned workers) {
    epidemic::SimConfig c;
    c.n_total = n_total;
    c.n_s = n_s;
    c.n_r = n_r;
    c.d = d;
    c.p_b = p_b;
    c.list_mode = epidemic::list_mode_from_string(list_mode);
    c.trials = trials;
    c.seed = seed;
    c.workers = workers;
    return c;
  };
  m.def(
      "estimate_blocking",
      [sim_config](std::int64_t n_total, std::int64_t n_s, std::int64_t n_r, std::int64_t d, double p_b,
                   const std::string& list_mode, std::uint64_t trials, std::uint64_t seed, unsigned workers) {
        py::gil_scoped_release release;
        const auto e = epidemic::estimate_blocking(sim_config(n_total, n_s, n_r, d, p_b, list_mode, trials, seed, workers));
        return std::make_pair(e.estimate, e.std_error);
      },
      py::arg("n_total") = 30, py::arg("n_s") = 5, py::arg("n_r") = 6, py::arg("d") = 3, py::arg("p_b") = 0.0,
      py::arg("list_mode") = "static", py::arg("trials") = 10000, py::arg("seed") = 1, py::arg("workers") = 1);
  m.def(
      "contamination_series",
      [sim_config](std::int64_t n_total, std::int64_t n_s, std::int64_t n_r, std::int64_t d, double p_b,
                   const std::string& list_mode, std::uint64_t trials, std::uint64_t seed, unsigned workers,
                   std::optional<std::int64_t> condition_y) {
        py::gil_scoped_release release;
        const auto s = epidemic::contamination_series(
            sim_config(n_total, n_s, n_r, d, p_b, list_mode, trials, seed, workers), condition_y);
        std::vector<std::pair<double, double>> out;
        for (const auto& pt : s.points) out.emplace_back(pt.mean, pt.std_error);
        return out;
      },
      py::arg("n_total") = 30, py::arg("n_s") = 5, py::arg("n_r") = 6, py::arg("d") = 3, py::arg("p_b") = 0.0,
      py::arg("list_mode") = "static", py::arg("trials") = 10000, py::arg("seed") = 1, py::arg("workers") = 1,
      py::arg("condition_y") = py::none());

  // --- cost model ------------------------------------------------------------
  auto cost = [](double p_n, std::uint64_t G, double op_rate, double og_rate) {
    overhead::CostModelParams c;
    c.p_n = p_n;
    c.G = G;
    c.op_rate = op_rate;
    c.og_rate = og_rate;
    return c;
  };
  m.def(
      "scheme_cost",
      [cost](const std::string& scheme, double p_n, std::uint64_t G, double op_rate, double og_rate) {
        return overhead::scheme_cost(overhead::scheme_from_string(scheme), cost(p_n, G, op_rate, og_rate));
      },
      py::arg("scheme"), py::arg("p_n"), py::arg("G") = 100, py::arg("op_rate") = 0.06, py::arg("og_rate") = 0.02);
  m.def("generation_drop_prob", &overhead::generation_drop_prob);
  m.def("generation_cost_limit", &overhead::generation_cost_limit);
  m.def("pubkey_overhead", [](std::uint64_t file_bytes, std::uint64_t mm, std::uint64_t p_bits, std::uint64_t q_bits) {
    const auto po = overhead::pubkey_overhead(file_bytes, mm, p_bits, q_bits);
    return std::make_pair(po.l, po.fraction);
  });

  // --- command line ----------------------------------------------------------
  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::dispatch(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
  m.attr("__version__") = cli::kVersion;
}
