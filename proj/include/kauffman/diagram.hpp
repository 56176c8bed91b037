#pragma once

// Braid words, link diagrams, RE graph diagrams, planar trivalent states and
// tangles, all carried by CombinatorialMap.
//
// Crossing convention: a crossing node lists its half-edges counterclockwise
// h0 h1 h2 h3 with tag = h0 on the under-strand, so under = (h0,h2) and
// over = (h1,h3). The A-smoothing joins (h0,h1),(h2,h3); the B-smoothing
// joins (h1,h2),(h3,h0). The wide-edge resolution groups (h3,h0) at one
// trivalent vertex and (h1,h2) at the other.
//
// Wide-edge convention: a wide edge between u and v is stored as
// u = (x, y, w) and v = (w', z, t) counterclockwise, so that going around
// the whole wide edge counterclockwise reads x, y, z, t.

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "kauffman/map.hpp"

namespace kauffman {

using LinkDiagram = CombinatorialMap;
using REGraphDiagram = CombinatorialMap;
using PlanarTrivalentGraph = CombinatorialMap;

struct BraidWord {
  int strands = 1;
  std::vector<int> letters;
  friend bool operator==(const BraidWord&, const BraidWord&) = default;
};

BraidWord parse_braid(std::string_view text);
std::string to_text(const BraidWord& b);
int writhe(const BraidWord& b);
LinkDiagram braid_to_link(const BraidWord& b);
/// Number of cycles of the permutation induced by b.
int closure_components(const BraidWord& b);

LinkDiagram parse_pd(std::string_view text);
REGraphDiagram parse_regraph(std::string_view text);

void validate_link(const LinkDiagram& d);
void validate_regraph(const REGraphDiagram& d);
void validate_trivalent(const PlanarTrivalentGraph& g);

/// Swaps over- and under-strands at every crossing.
CombinatorialMap mirror(const CombinatorialMap& d);

/// Connected sum along standard half-edges h1 of d1 and h2 of d2; pass -1
/// to use a free loop of that diagram. Throws BadEdge on wide or invalid
/// edges.
CombinatorialMap connected_sum(const CombinatorialMap& d1, int h1, const CombinatorialMap& d2,
                               int h2);

/// na + nb + (wide edges created) = crossings of the source diagram.
struct StateRecord {
  PlanarTrivalentGraph graph;
  int na = 0;
  int nb = 0;
};

enum class Resolution : std::uint8_t { A = 0, B = 1, Wide = 2 };

/// Crossing nodes of d in node order.
std::vector<int> crossing_nodes(const CombinatorialMap& d);

/// Resolves every crossing of d as given by `choice` (one entry per
/// crossing, in crossing_nodes order).
StateRecord resolve(const CombinatorialMap& d, const std::vector<Resolution>& choice);

/// Resolves a single crossing node, leaving the others in place.
CombinatorialMap resolve_one(const CombinatorialMap& d, int crossingNode, Resolution r);

/// Calls f for every one of the 3^c states (A, B, Wide varying fastest at
/// the last crossing).
void for_each_state(const CombinatorialMap& d, const std::function<void(const StateRecord&)>& f);
std::vector<StateRecord> states(const CombinatorialMap& d);

/// Circle with no nodes.
PlanarTrivalentGraph circles(int k);
/// Two trivalent vertices, one wide edge, two standard edges between them.
PlanarTrivalentGraph theta();

// ------------------------------------------------------------------ tangles

/// Planar trivalent graph in a rectangle; boundary nodes carry tag i for
/// the i-th top endpoint and n + i for the i-th bottom endpoint (0-based).
struct Tangle {
  CombinatorialMap map;
  int n = 0;
};

Tangle identity_tangle(int n);
/// Cap on top endpoints i, i+1 and cup on bottom endpoints i, i+1 (1-based i).
Tangle t_tangle(int n, int i);
/// Strands i, i+1 merge at a vertex, wide edge down, split again (1-based i).
Tangle c_tangle(int n, int i);
/// x on top of y.
Tangle stack(const Tangle& x, const Tangle& y);
PlanarTrivalentGraph close_tangle(const Tangle& t);

// --------------------------------------------------------------------- JSON

std::string to_json(const CombinatorialMap& g);
CombinatorialMap map_from_json(std::string_view text);

}  // namespace kauffman
