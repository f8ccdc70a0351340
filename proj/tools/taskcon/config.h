/// @file config.h
/// Project configuration read from `taskcon.toml`.
#ifndef TASKCON_TOOLS_CONFIG_H_
#define TASKCON_TOOLS_CONFIG_H_

#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "taskcon/diagnostic.h"
#include "taskcon/error.h"
#include "taskcon/tailor.h"

namespace taskcon::cli {

struct RunConfig {
  bool strict = false;
  double quantile = 1.0;
  std::set<Rule> suppressed;
  tailor::DerivationPolicy::Mode mode = tailor::DerivationPolicy::Mode::kAdditive;
  std::optional<double> step;  // no default; the user picks one
  int rounding = 2;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Reads the TOML subset used by taskcon:
///
///     strict = true
///     quantile = 0.95
///     suppress = ["R10", "R12"]
///     [derive]
///     mode = "additive"
///     step = 0.5
///     rounding = 2
///
/// Unknown keys and malformed values throw ConfigError naming the line.
RunConfig ParseConfig(std::string_view text, std::string_view file_name);

/// Throws ConfigError unless quantile is in (0, 1].
void CheckQuantile(double quantile);

}  // namespace taskcon::cli

#endif  // TASKCON_TOOLS_CONFIG_H_
