#pragma once

// Built-in observable sets and the regression checks run by `povm-discrim paper`.

#include <string>
#include <vector>

#include "povm_discrim/povm.hpp"

namespace povm_discrim::cli {

// Stern-Gerlach pair {sigma_z, sigma_x}.
std::vector<Povm> spin_z_x_pair();

// Five qutrit observables A..E with effects diagonal in the standard basis,
// discriminable with three shots from the product probe |0>|1>|2>.
std::vector<Povm> five_qutrit_observables();

// Qutrit pair where B_1 = diag(1, 1, t) has no zero eigenvalue, 0 < t < 1.
std::vector<Povm> qutrit_pair_with_full_rank_effect(double t);

// Printed as "<name>: <verdict>", e.g. "Example 2: table matches".
struct CheckResult {
  std::string name;
  std::string verdict;
  bool passed = false;
  std::string detail;

  std::string line() const { return name + ": " + verdict; }
};

std::vector<CheckResult> run_reproductions();

}  // namespace povm_discrim::cli
