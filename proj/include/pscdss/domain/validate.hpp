#pragma once

#include <string>
#include <vector>

#include "pscdss/domain/types.hpp"

namespace pscdss::domain {

struct ValidationResult {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

// Stateless admission checks against the current world state: wire size per
// task family, seller band ownership/idleness, buyer solvency, sane status
// transitions. Never mutates state.
ValidationResult validate_transaction(const Transaction& tx, const WorldState& state);

}  // namespace pscdss::domain
