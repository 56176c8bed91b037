#pragma once

// Unoriented Kauffman polynomial of a link diagram by crossing switches
// down to a descending diagram, with z = A - B:
//   P(D) - P(D switched at x) = z (P(A-smoothing) - P(B-smoothing))
//   P(descending, c components) = a^(self writhe) alpha^(c-1).
// Uses nothing from the trivalent machinery.

#include <string>
#include <unordered_map>

#include "kauffman/map.hpp"
#include "kauffman/ring.hpp"

namespace kt {

class DubrovnikOracle {
 public:
  kauffman::RingElem value(const kauffman::CombinatorialMap& d);

 private:
  std::unordered_map<std::string, kauffman::RingElem> memo_;
};

/// Number of link components (strand cycles plus free loops).
int link_components(const kauffman::CombinatorialMap& d);

}  // namespace kt
