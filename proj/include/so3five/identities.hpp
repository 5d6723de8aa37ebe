#ifndef SO3FIVE_IDENTITIES_HPP
#define SO3FIVE_IDENTITIES_HPP

#include <functional>
#include <string>
#include <vector>

#include "so3five/analysis.hpp"

namespace so3five {

struct IdentityResult {
  std::string name;
  bool pass = false;
  double residual = 0.0;
};

struct IdentityOptions {
  Mode mode = Mode::exact;
  double tolerance = 1e-9;  // float mode only
  /// testing aid: flips one sign inside the bracket-relation check so the
  /// suite must report a failure
  bool inject_defect = false;
};

/// Runs every invariant of the four kernel modules; one labelled result per
/// identity, in a fixed order.
std::vector<IdentityResult> run_identity_suite(const IdentityOptions& opts);

}  // namespace so3five

#endif
