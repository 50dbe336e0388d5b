#include "ldl/report.hpp"

#include <json.hpp>
#include <sstream>

namespace ldl {

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

void hasse(std::ostringstream& out, const FinitePoset& p, const std::string& prefix, const std::string& indent) {
  for (std::size_t i = 0; i < p.size(); ++i) out << indent << prefix << i << " [label=" << quoted(p.id(i)) << "];\n";
  for (const auto& [lo, hi] : p.covers()) out << indent << prefix << lo << " -> " << prefix << hi << ";\n";
}

}  // namespace

std::string poset_dot(const FinitePoset& p, const std::string& name) {
  std::ostringstream out;
  out << "digraph " << quoted(name) << " {\n  rankdir=BT;\n  node [shape=circle];\n";
  hasse(out, p, "n", "  ");
  out << "}\n";
  return out.str();
}

std::string state_space_dot(const StateSpace& space, const std::string& name) {
  std::ostringstream out;
  out << "digraph " << quoted(name) << " {\n  rankdir=BT;\n  node [shape=box];\n";
  hasse(out, space.poset, "s", "  ");
  out << "}\n";
  return out.str();
}

std::string relation_dot(const ConsequenceRelation& theta, const std::string& name) {
  std::ostringstream out;
  out << "digraph " << quoted(name) << " {\n  rankdir=BT;\n  node [shape=box];\n";
  out << "  subgraph cluster_source {\n    label=\"source\";\n";
  hasse(out, theta.source->poset, "a", "    ");
  out << "  }\n  subgraph cluster_target {\n    label=\"target\";\n";
  hasse(out, theta.target->poset, "b", "    ");
  out << "  }\n";
  for (std::size_t m = 0; m < theta.table.size(); ++m) {
    const std::string label = theta.source->states[m].label() + " -> " + theta.target->states[theta.table[m]].label();
    out << "  a" << m << " -> b" << theta.table[m] << " [style=dashed, label=" << quoted(label) << "];\n";
  }
  out << "}\n";
  return out.str();
}

std::string states_jsonl(const StateSpace& space) {
  std::ostringstream out;
  const auto covers = space.poset.covers();
  for (std::size_t i = 0; i < space.size(); ++i) {
    const LogicalState& s = space.states[i];
    nlohmann::json rec;
    rec["index"] = i;
    rec["label"] = s.label();
    rec["generator"] = nlohmann::json::array();
    if (s.generator()) {
      for (std::size_t a : s.generator()->atoms.indices()) rec["generator"].push_back(space.calc->atoms()[a]);
    }
    rec["covered_by"] = nlohmann::json::array();
    for (const auto& [lo, hi] : covers) {
      if (lo == i) rec["covered_by"].push_back(hi);
    }
    out << rec.dump() << "\n";
  }
  return out.str();
}

}  // namespace ldl
