#pragma once

#include <string>

#include "ldl/duality.hpp"
#include "ldl/order.hpp"
#include "ldl/states.hpp"

namespace ldl {

/// Hasse diagram in DOT, bottom element first.
std::string poset_dot(const FinitePoset& p, const std::string& name = "poset");
/// Hasse diagram of a state poset, nodes labelled by generators.
std::string state_space_dot(const StateSpace& space, const std::string& name = "states");
/// Two clusters (source and target state posets) and one dashed edge per
/// source state, pointing at its row and labelled by the generator mapping.
std::string relation_dot(const ConsequenceRelation& theta, const std::string& name = "relation");

/// One JSON object per line and state: index, label, generator atoms, the
/// indices of the states covering it.
std::string states_jsonl(const StateSpace& space);

}  // namespace ldl
