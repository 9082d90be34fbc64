#pragma once

#include <optional>
#include <string>

#include "report.hpp"

namespace iwg::cli {

struct ColemanArgs {
  std::optional<long> p;
  std::optional<std::string> ap;
  std::optional<int> nmax;
};

int run_honda_check(const Options& opt);
int run_logarithm(const Options& opt);
int run_local_points(const Options& opt);
int run_coleman(const Options& opt, const ColemanArgs& args);
int run_kobayashi(const Options& opt);
int run_growth(const Options& opt);

}  // namespace iwg::cli
