#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "povm_discrim/error.hpp"
#include "povm_discrim/unambiguous.hpp"

namespace povm_discrim::cli {

enum ExitStatus : int {
  kOk = 0,
  kValidationFailed = 1,
  kParseFailed = 2,
  kInfeasible = 3,
};

struct CommandOptions {
  std::optional<std::size_t> shots;
  std::optional<Mode> mode;
  std::optional<std::vector<std::string>> targets;
  bool json = false;
  std::uint64_t seed = 1;
  std::optional<double> tol;
  bool all_assignments = false;
  std::uint64_t search_cap = kDefaultSearchCap;
};

// Reads POVM_DISCRIM_SEARCH_CAP; nullopt when unset. Throws ParseError when
// set to something other than a positive integer.
std::optional<std::uint64_t> search_cap_from_env();

int exit_status_for(const Error& e);

// Each command writes its report to `out` and diagnostics to `err`, and
// returns the process exit status.
int cmd_validate(const std::filesystem::path& spec, const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_orbits(std::size_t n, std::size_t k, const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_discriminate(const std::filesystem::path& spec, const CommandOptions& opts, std::ostream& out,
                     std::ostream& err);
int cmd_identify(const std::filesystem::path& spec, const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_explore(const Vec3& a, const Vec3& b, std::pair<double, double> priors, std::uint64_t samples,
                const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_paper(const CommandOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace povm_discrim::cli
