#pragma once

// Random inputs for the property suites.

#include <random>
#include <vector>

#include "kauffman/diagram.hpp"

namespace kt {

using kauffman::BraidWord;
using kauffman::CombinatorialMap;
using Rng = std::mt19937_64;

int uniform(Rng& rng, int lo, int hi);

BraidWord random_braid(Rng& rng, int maxStrands, int maxLetters, int minStrands = 2);

/// Splits standard half-edge h with a new trivalent vertex whose wide
/// half-edge points into the face on the right of h; returns that wide
/// half-edge (twin left unset).
int subdivide(CombinatorialMap& g, int h);

/// Wide chord between standard half-edges h1, h2 of one face. h1 == h2 puts
/// both endpoints on the same edge. Returns false (g untouched) when the
/// result would not be planar.
bool add_chord(CombinatorialMap& g, int h1, int h2);

/// Wide edge from standard half-edge h to a new vertex carrying a loop.
void add_bubble(CombinatorialMap& g, int h);

/// Random wide chord or bubble on a random face.
bool random_wide_insertion(CombinatorialMap& g, Rng& rng);

/// Connected planar trivalent graph with 2..maxVertices vertices (even).
CombinatorialMap random_trivalent(Rng& rng, int maxVertices);

/// Possibly disconnected, possibly with free loops; total vertices <= maxVertices.
CombinatorialMap random_state_graph(Rng& rng, int maxVertices);

/// All-wide state of the 6-crossing diagram whose projection is the
/// octahedron, with each wide edge rotated at random: 12 vertices and no
/// reducible configuration, so evaluation needs the flip fallback.
CombinatorialMap octahedral_state(Rng& rng);

/// Trivalent map from a straight-line drawing: rotations come from the
/// angles of the neighbours.
struct DrawnEdge {
  int u, v;
  bool wide;
};
CombinatorialMap from_drawing(const std::vector<std::pair<double, double>>& pts,
                              const std::vector<DrawnEdge>& edges);

/// Dodecahedron with the ten spokes wide: every face is a pentagon.
CombinatorialMap dodecahedron();

/// RE graph diagram: closure of a random braid with up to maxCrossings
/// crossings plus up to maxWide wide chords.
CombinatorialMap random_regraph(Rng& rng, int maxCrossings, int maxWide);

/// Pinches standard edges h1, h2 (distinct edges on one face) into a
/// crossing; one smoothing of it gives g back. underFirst puts the strand
/// through h1's start under. Returns false if no planar embedding exists.
bool insert_crossing(CombinatorialMap& g, int h1, int h2, bool underFirst);

/// One-crossing RE graph whose three resolutions at the crossing have equal
/// component counts; retries until one is found.
CombinatorialMap equal_components_crossing(Rng& rng, int maxVertices);

/// Adds a curl on the edge of standard half-edge h. kind = +1 puts the loop
/// on an A-smoothing pair, -1 on a B-smoothing pair.
void insert_kink(CombinatorialMap& g, int h, int kind);

/// Swaps over and under at crossing node n.
void switch_crossing(CombinatorialMap& g, int n);

/// All standard half-edges (one per edge when oneSide).
std::vector<int> standard_half_edges(const CombinatorialMap& g, bool oneSide = true);

}  // namespace kt
