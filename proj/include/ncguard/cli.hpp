#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ncguard/overhead.hpp"

namespace ncguard::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Named parameter sets: fig3/fig4 topology, fig5/fig67 cost curves.
struct Preset {
  std::string name;
  std::int64_t n_total = 30;
  std::int64_t n_s = 5;
  std::int64_t n_r = 6;
  std::int64_t d = 3;
  std::optional<std::int64_t> y;
  std::vector<std::uint64_t> generation_sizes;
  overhead::CostModelParams cost;
};

/// fig3, fig4, fig5 or fig67; throws std::invalid_argument otherwise.
Preset preset(const std::string& name);

/// Runs the command line. 0 on success, 1 on domain errors (including a
/// packet that fails verification), 2 on usage errors.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ncguard::cli
