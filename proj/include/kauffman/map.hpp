#pragma once

// Rotation-system maps: the shared substrate for link diagrams, RE graph
// diagrams, planar trivalent states, tangles and 4-valent graphs.

#include <cstdint>
#include <string>
#include <vector>

namespace kauffman {

enum class EdgeKind : std::uint8_t { Standard = 0, Wide = 1 };

enum class NodeKind : std::uint8_t {
  Crossing = 0,   // degree 4, tag = first half-edge of the under-strand
  Trivalent = 1,  // degree 3, exactly one wide half-edge
  Boundary = 2,   // degree 1 tangle endpoint, tag = endpoint index
  Flat = 3,       // degree 4 graphical vertex (no over/under)
};

struct CombinatorialMap {
  // per half-edge
  std::vector<int> twin;
  std::vector<int> next;  // counterclockwise successor around the node
  std::vector<int> node;
  std::vector<EdgeKind> kind;
  // per node
  std::vector<NodeKind> nodeKind;
  std::vector<int> nodeHe;
  std::vector<int> tag;
  int freeLoops = 0;

  int half_edges() const { return static_cast<int>(twin.size()); }
  int nodes() const { return static_cast<int>(nodeKind.size()); }
  int degree(int n) const;
  int prev(int h) const;
  /// Half-edges of node n in rotation order starting at nodeHe[n].
  std::vector<int> rotation(int n) const;
  /// Face successor: leave along h, arrive at twin(h), turn to its successor.
  int face_next(int h) const { return next[twin[h]]; }
  std::vector<std::vector<int>> faces() const;

  int count(NodeKind k) const;
  int wide_edges() const;

  /// Component id per node; returns the number of node components.
  int components(std::vector<int>& compOfNode) const;
  /// Node components plus free loops.
  int total_components() const;

  /// Throws on broken involution / rotation.
  void check_structure() const;
  /// Sphere Euler relation V - E + F = 2 for every component.
  bool euler_ok() const;

  /// Under-strand flag for crossing half-edges.
  bool is_under(int h) const;
};

/// Builds maps from scratch: nodes get contiguous half-edges in ccw order.
class MapBuilder {
 public:
  int add_node(NodeKind k, int degree, int tag = -1);
  void link(int h1, int h2, EdgeKind kind = EdgeKind::Standard);
  void add_free_loops(int k) { map_.freeLoops += k; }
  int half_edges() const { return map_.half_edges(); }
  CombinatorialMap build();

 private:
  CombinatorialMap map_;
};

/// Cut-and-reglue rewriting. Nodes are removed; the half-edges of removed
/// nodes that lead out of the removed region become ports; ports and the
/// half-edges of new nodes are then linked. A port whose twin is itself a
/// removed half-edge is chained through, and closed chains become free loops.
class MapRewriter {
 public:
  struct End {
    bool fresh;
    int h;
  };
  explicit MapRewriter(const CombinatorialMap& g);

  void remove_node(int n);
  /// Returns the first new half-edge id of the node (ids are local to the
  /// rewriter; pass them through End::fresh).
  int add_node(NodeKind k, int degree, int tag = -1);
  static End port(int h) { return {false, h}; }
  static End fresh(int h) { return {true, h}; }
  void link(End a, End b, EdgeKind kind = EdgeKind::Standard);
  void add_free_loops(int k) { extraLoops_ += k; }
  CombinatorialMap build() const;

 private:
  struct NewNode {
    NodeKind kind;
    int degree;
    int tag;
    int first;
  };
  struct Link {
    End a, b;
    EdgeKind kind;
  };
  const CombinatorialMap& g_;
  std::vector<bool> removed_;
  std::vector<NewNode> newNodes_;
  std::vector<Link> links_;
  int freshCount_ = 0;
  int extraLoops_ = 0;
};

/// Extracts one node component as its own map (no free loops).
CombinatorialMap extract_component(const CombinatorialMap& g,
                                   const std::vector<int>& compOfNode, int comp);

/// Disjoint union; node and half-edge ids of b are shifted.
CombinatorialMap disjoint_union(const CombinatorialMap& a, const CombinatorialMap& b);

/// Canonical byte string, equal exactly for isomorphic maps (orientation
/// preserving). Free loops and component permutation are folded in.
std::string canonical_signature(const CombinatorialMap& g);

/// Signature of one connected map with no free loops.
std::string component_code(const CombinatorialMap& g);

}  // namespace kauffman
