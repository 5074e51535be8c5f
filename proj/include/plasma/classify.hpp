#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "plasma/scenario.hpp"
#include "plasma/symmetry.hpp"

namespace plasma {

/// One recognized case: its identity, the shape parameters that were
/// read off the scenario, and any note about how it was recognized.
struct MatchedCase {
  CaseId id;
  std::map<std::string, double> params;
  std::string note;
};

/// Result of matching a scenario against the symmetry classification.
/// `primary` is the most specific matching case; less specific cases it
/// shadows are listed separately. `generators` is the union over all
/// matches with proportional duplicates removed.
struct Classification {
  bool precondition_ok = false;  // W depends on t and A depends on u
  std::optional<MatchedCase> primary;
  std::vector<MatchedCase> shadowed;
  std::vector<Generator> generators;
  std::string reason;  // set when there is no primary match

  nlohmann::json to_json() const;
};

/// Matches the scenario's (G, A, W) shapes against the classified cases.
/// Overall multipliers are ignored (they are absorbed by the equivalence
/// group); only shapes and shape parameters decide. A shifted
/// inverse-square state dependence is recognized through the reflection
/// v = u_inf - u, which negates the source; tabulated A or W carry no
/// recognizable shape, so they reach only the cases that place no
/// constraint on that coefficient.
Classification classify(const Scenario& sc);

}  // namespace plasma
