#include "depthforge/schedule.hpp"

#include <stdexcept>

namespace depthforge {

std::string HamiltonianId::str() const {
  switch (kind) {
    case Kind::Hb: return "Hb";
    case Kind::Hc: return "Hc";
    case Kind::Term:
      if (family == Family::H0 || family == Family::M) return family_name(family);
      return family_name(family) + std::to_string(index);
  }
  throw std::logic_error("bad hamiltonian id");
}

HamiltonianId HamiltonianId::parse(const std::string& s) {
  if (s == "Hb") return hb();
  if (s == "Hc") return hc();
  if (s == "H0") return term(Family::H0, 0);
  if (s == "M") return term(Family::M, 0);
  if (s.size() >= 2) {
    const Family f = family_from_name(s.substr(0, 1));
    return term(f, std::stoi(s.substr(1)));
  }
  throw std::invalid_argument("cannot parse hamiltonian id: " + s);
}

bool Schedule::alternates_from_hc() const {
  for (size_t i = 0; i < steps.size(); ++i) {
    const auto want = (i % 2 == 0) ? HamiltonianId::Kind::Hc : HamiltonianId::Kind::Hb;
    if (steps[i].id.kind != want) return false;
  }
  return true;
}

}  // namespace depthforge
