#include "kauffman/map.hpp"

#include <algorithm>
#include <cstring>
#include <map>
#include <numeric>

#include "kauffman/errors.hpp"

namespace kauffman {

int CombinatorialMap::degree(int n) const {
  int d = 0;
  int h = nodeHe[n];
  do {
    ++d;
    h = next[h];
  } while (h != nodeHe[n]);
  return d;
}

int CombinatorialMap::prev(int h) const {
  int p = h;
  while (next[p] != h) p = next[p];
  return p;
}

std::vector<int> CombinatorialMap::rotation(int n) const {
  std::vector<int> r;
  int h = nodeHe[n];
  do {
    r.push_back(h);
    h = next[h];
  } while (h != nodeHe[n]);
  return r;
}

std::vector<std::vector<int>> CombinatorialMap::faces() const {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(twin.size(), 0);
  for (int h = 0; h < half_edges(); ++h) {
    if (seen[h]) continue;
    std::vector<int> f;
    int x = h;
    while (!seen[x]) {
      seen[x] = 1;
      f.push_back(x);
      x = face_next(x);
    }
    out.push_back(std::move(f));
  }
  return out;
}

int CombinatorialMap::count(NodeKind k) const {
  return static_cast<int>(std::count(nodeKind.begin(), nodeKind.end(), k));
}

int CombinatorialMap::wide_edges() const {
  return static_cast<int>(std::count(kind.begin(), kind.end(), EdgeKind::Wide)) / 2;
}

int CombinatorialMap::components(std::vector<int>& compOfNode) const {
  std::vector<int> parent(nodes());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int h = 0; h < half_edges(); ++h) {
    int a = find(node[h]), b = find(node[twin[h]]);
    if (a != b) parent[a] = b;
  }
  compOfNode.assign(nodes(), -1);
  std::vector<int> rootId(nodes(), -1);
  int c = 0;
  for (int n = 0; n < nodes(); ++n) {
    int r = find(n);
    if (rootId[r] < 0) rootId[r] = c++;
    compOfNode[n] = rootId[r];
  }
  return c;
}

int CombinatorialMap::total_components() const {
  std::vector<int> comp;
  return components(comp) + freeLoops;
}

void CombinatorialMap::check_structure() const {
  const int H = half_edges();
  if (static_cast<int>(next.size()) != H || static_cast<int>(node.size()) != H ||
      static_cast<int>(kind.size()) != H)
    throw Error(ErrorKind::Internal, "half-edge arrays differ in length");
  for (int h = 0; h < H; ++h) {
    const int t = twin[h];
    if (t < 0 || t >= H || t == h || twin[t] != h)
      throw Error(ErrorKind::Internal, "twin is not a fixed-point-free involution");
    if (kind[t] != kind[h]) throw Error(ErrorKind::Internal, "edge kind differs across twins");
    if (next[h] < 0 || next[h] >= H || node[next[h]] != node[h])
      throw Error(ErrorKind::Internal, "rotation leaves its node");
  }
  std::vector<char> seen(H, 0);
  for (int n = 0; n < nodes(); ++n) {
    int h = nodeHe[n];
    if (h < 0 || h >= H || node[h] != n) throw Error(ErrorKind::Internal, "bad node half-edge");
    do {
      if (seen[h]) throw Error(ErrorKind::Internal, "rotation is not a permutation");
      seen[h] = 1;
      h = next[h];
    } while (h != nodeHe[n]);
  }
  for (int h = 0; h < H; ++h)
    if (!seen[h]) throw Error(ErrorKind::Internal, "half-edge outside every rotation cycle");
}

bool CombinatorialMap::euler_ok() const {
  std::vector<int> comp;
  const int c = components(comp);
  std::vector<long> chi(c, 0);
  for (int n = 0; n < nodes(); ++n) chi[comp[n]] += 1;
  for (int h = 0; h < half_edges(); ++h)
    if (h < twin[h]) chi[comp[node[h]]] -= 1;
  for (const auto& f : faces()) chi[comp[node[f.front()]]] += 1;
  return std::all_of(chi.begin(), chi.end(), [](long x) { return x == 2; });
}

bool CombinatorialMap::is_under(int h) const {
  const int n = node[h];
  if (nodeKind[n] != NodeKind::Crossing) return false;
  const int u = tag[n];
  return h == u || h == next[next[u]];
}

// ---------------------------------------------------------------- MapBuilder

int MapBuilder::add_node(NodeKind k, int degree, int tag) {
  const int first = map_.half_edges();
  const int n = map_.nodes();
  for (int i = 0; i < degree; ++i) {
    map_.twin.push_back(-1);
    map_.next.push_back(first + (i + 1) % degree);
    map_.node.push_back(n);
    map_.kind.push_back(EdgeKind::Standard);
  }
  map_.nodeKind.push_back(k);
  map_.nodeHe.push_back(first);
  // crossings default to the first half-edge as under-strand start
  map_.tag.push_back(k == NodeKind::Crossing && tag < 0 ? first : tag);
  return first;
}

void MapBuilder::link(int h1, int h2, EdgeKind kind) {
  if (h1 == h2 || map_.twin[h1] != -1 || map_.twin[h2] != -1)
    throw Error(ErrorKind::Internal, "half-edge linked twice");
  map_.twin[h1] = h2;
  map_.twin[h2] = h1;
  map_.kind[h1] = map_.kind[h2] = kind;
}

CombinatorialMap MapBuilder::build() {
  map_.check_structure();
  return std::move(map_);
}

// --------------------------------------------------------------- MapRewriter

MapRewriter::MapRewriter(const CombinatorialMap& g) : g_(g), removed_(g.nodes(), false) {}

void MapRewriter::remove_node(int n) { removed_[n] = true; }

int MapRewriter::add_node(NodeKind k, int degree, int tag) {
  const int first = freshCount_;
  newNodes_.push_back({k, degree, tag, first});
  freshCount_ += degree;
  return first;
}

void MapRewriter::link(End a, End b, EdgeKind kind) { links_.push_back({a, b, kind}); }

CombinatorialMap MapRewriter::build() const {
  const int H = g_.half_edges();
  // New ids: kept nodes first (in order), then fresh nodes.
  std::vector<int> nodeMap(g_.nodes(), -1);
  std::vector<int> heMap(H, -1);
  CombinatorialMap out;
  out.freeLoops = g_.freeLoops + extraLoops_;
  for (int n = 0; n < g_.nodes(); ++n) {
    if (removed_[n]) continue;
    nodeMap[n] = out.nodes();
    out.nodeKind.push_back(g_.nodeKind[n]);
    out.nodeHe.push_back(-1);
    out.tag.push_back(g_.tag[n]);
  }
  for (int h = 0; h < H; ++h) {
    if (removed_[g_.node[h]]) continue;
    heMap[h] = out.half_edges();
    out.twin.push_back(-1);
    out.next.push_back(-1);
    out.node.push_back(nodeMap[g_.node[h]]);
    out.kind.push_back(g_.kind[h]);
  }
  for (int h = 0; h < H; ++h) {
    if (heMap[h] < 0) continue;
    out.next[heMap[h]] = heMap[g_.next[h]];
    if (!removed_[g_.node[g_.twin[h]]]) out.twin[heMap[h]] = heMap[g_.twin[h]];
  }
  for (int n = 0; n < g_.nodes(); ++n) {
    if (removed_[n]) continue;
    const int m = nodeMap[n];
    out.nodeHe[m] = heMap[g_.nodeHe[n]];
    if (g_.nodeKind[n] == NodeKind::Crossing) out.tag[m] = heMap[g_.tag[n]];
  }
  const int freshBase = out.half_edges();
  for (const auto& nn : newNodes_) {
    const int n = out.nodes();
    out.nodeKind.push_back(nn.kind);
    out.nodeHe.push_back(freshBase + nn.first);
    out.tag.push_back(nn.kind == NodeKind::Crossing ? freshBase + (nn.tag < 0 ? nn.first : nn.tag)
                                                    : nn.tag);
    for (int i = 0; i < nn.degree; ++i) {
      out.twin.push_back(-1);
      out.next.push_back(freshBase + nn.first + (i + 1) % nn.degree);
      out.node.push_back(n);
      out.kind.push_back(EdgeKind::Standard);
    }
  }

  // Chain resolution. Endpoint ids: concrete half-edges of `out` are
  // 0..outH-1; ports at removed half-edges are outH + h.
  const int outH = out.half_edges();
  auto endpoint = [&](const End& e) -> int {
    if (e.fresh) return freshBase + e.h;
    if (!removed_[g_.node[e.h]]) throw Error(ErrorKind::Internal, "port on a kept node");
    const int t = g_.twin[e.h];
    if (!removed_[g_.node[t]]) return heMap[t];
    return outH + e.h;
  };
  std::vector<int> linkPartner(outH + H, -1);
  std::vector<EdgeKind> linkKind(outH + H, EdgeKind::Standard);
  for (const auto& l : links_) {
    const int a = endpoint(l.a), b = endpoint(l.b);
    if (linkPartner[a] != -1 || linkPartner[b] != -1)
      throw Error(ErrorKind::Internal, "endpoint linked twice");
    linkPartner[a] = b;
    linkPartner[b] = a;
    linkKind[a] = linkKind[b] = l.kind;
  }
  auto is_port = [&](int id) { return id >= outH; };
  auto through = [&](int id) {  // port -> the port on the other side of its edge
    const int t = g_.twin[id - outH];
    const int pid = outH + t;
    if (linkPartner[pid] == -1) throw Error(ErrorKind::Internal, "dangling port chain");
    return pid;
  };
  std::vector<char> used(outH + H, 0);
  for (int h = 0; h < outH; ++h) {
    if (out.twin[h] != -1 || used[h]) continue;
    int cur = linkPartner[h];
    if (cur == -1) throw Error(ErrorKind::Internal, "half-edge left unconnected");
    EdgeKind k = linkKind[h];
    used[h] = 1;
    while (is_port(cur)) {
      used[cur] = 1;
      const int other = through(cur);
      used[other] = 1;
      k = EdgeKind::Standard;
      cur = linkPartner[other];
    }
    used[cur] = 1;
    out.twin[h] = cur;
    out.twin[cur] = h;
    out.kind[h] = out.kind[cur] = k;
  }
  for (int id = outH; id < outH + H; ++id) {
    if (linkPartner[id] == -1 || used[id]) continue;
    int cur = id;
    while (!used[cur]) {
      used[cur] = 1;
      const int other = through(cur);
      used[other] = 1;
      cur = linkPartner[other];
    }
    ++out.freeLoops;
  }
  return out;
}

// ------------------------------------------------------- component utilities

CombinatorialMap extract_component(const CombinatorialMap& g, const std::vector<int>& compOfNode,
                                   int comp) {
  CombinatorialMap out;
  std::vector<int> nodeMap(g.nodes(), -1), heMap(g.half_edges(), -1);
  for (int n = 0; n < g.nodes(); ++n) {
    if (compOfNode[n] != comp) continue;
    nodeMap[n] = out.nodes();
    out.nodeKind.push_back(g.nodeKind[n]);
    out.nodeHe.push_back(-1);
    out.tag.push_back(g.tag[n]);
  }
  for (int h = 0; h < g.half_edges(); ++h) {
    if (nodeMap[g.node[h]] < 0) continue;
    heMap[h] = out.half_edges();
    out.twin.push_back(-1);
    out.next.push_back(-1);
    out.node.push_back(nodeMap[g.node[h]]);
    out.kind.push_back(g.kind[h]);
  }
  for (int h = 0; h < g.half_edges(); ++h) {
    if (heMap[h] < 0) continue;
    out.twin[heMap[h]] = heMap[g.twin[h]];
    out.next[heMap[h]] = heMap[g.next[h]];
  }
  for (int n = 0; n < g.nodes(); ++n) {
    if (nodeMap[n] < 0) continue;
    out.nodeHe[nodeMap[n]] = heMap[g.nodeHe[n]];
    if (g.nodeKind[n] == NodeKind::Crossing) out.tag[nodeMap[n]] = heMap[g.tag[n]];
  }
  return out;
}

CombinatorialMap disjoint_union(const CombinatorialMap& a, const CombinatorialMap& b) {
  CombinatorialMap out = a;
  const int ho = a.half_edges(), no = a.nodes();
  for (int h = 0; h < b.half_edges(); ++h) {
    out.twin.push_back(b.twin[h] + ho);
    out.next.push_back(b.next[h] + ho);
    out.node.push_back(b.node[h] + no);
    out.kind.push_back(b.kind[h]);
  }
  for (int n = 0; n < b.nodes(); ++n) {
    out.nodeKind.push_back(b.nodeKind[n]);
    out.nodeHe.push_back(b.nodeHe[n] + ho);
    out.tag.push_back(b.nodeKind[n] == NodeKind::Crossing ? b.tag[n] + ho : b.tag[n]);
  }
  out.freeLoops += b.freeLoops;
  return out;
}

// ---------------------------------------------------------------- signatures

namespace {

int half_edge_class(const CombinatorialMap& g, int h) {
  const int n = g.node[h];
  int c = static_cast<int>(g.nodeKind[n]) * 64 + static_cast<int>(g.kind[h]) * 2 +
          (g.is_under(h) ? 1 : 0);
  if (g.nodeKind[n] == NodeKind::Boundary) c += 256 * (g.tag[n] + 1);
  return c;
}

// Emits the traversal code from `start`, aborting as soon as the prefix
// exceeds `best` (when best is non-empty). Returns true if a new minimum
// was written to `best`.
bool encode_from(const CombinatorialMap& g, int start, std::vector<int>& idx,
                 std::vector<int>& order, std::vector<int>& code, std::vector<int>& best) {
  // idx is -1 everywhere except on the previous call's order
  for (int h : order) idx[h] = -1;
  order.clear();
  code.clear();
  bool less = best.empty();
  auto emit = [&](int token) {
    if (!less) {
      const std::size_t i = code.size();
      if (token < best[i]) less = true;
      else if (token > best[i]) return false;
    }
    code.push_back(token);
    return true;
  };
  auto visit = [&](int h) {
    const int n = g.node[h];
    int x = h;
    int deg = 0;
    do {
      ++deg;
      x = g.next[x];
    } while (x != h);
    int marker = 1 << 20;
    marker += static_cast<int>(g.nodeKind[n]) * 16 + deg;
    if (g.nodeKind[n] == NodeKind::Boundary) marker += 256 * (g.tag[n] + 1);
    if (!emit(marker)) return false;
    x = h;
    do {
      idx[x] = static_cast<int>(order.size());
      order.push_back(x);
      if (!emit(static_cast<int>(g.kind[x]) * 2 + (g.is_under(x) ? 1 : 0))) return false;
      x = g.next[x];
    } while (x != h);
    return true;
  };
  if (!visit(start)) return false;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const int t = g.twin[order[i]];
    if (idx[t] < 0 && !visit(t)) return false;
    if (!emit(idx[t])) return false;
  }
  if (!less) return false;  // equal to best
  best = code;
  return true;
}

void append_int(std::string& s, std::uint32_t v) {
  char buf[4];
  std::memcpy(buf, &v, 4);
  s.append(buf, 4);
}

}  // namespace

namespace {

// Code of the component whose half-edges are `hes` (nodes `ns`), read in place.
std::string code_in_place(const CombinatorialMap& g, const std::vector<int>& hes, const std::vector<int>& ns,
                          std::vector<int>& idx, std::vector<int>& order) {
  std::string s;
  if (hes.empty()) {
    // an isolated node cannot occur in valid maps; encode node kinds anyway
    for (int n : ns) append_int(s, 1u << 21 | static_cast<int>(g.nodeKind[n]));
    return s;
  }
  std::vector<int> classes;
  classes.reserve(hes.size());
  for (int h : hes) classes.push_back(half_edge_class(g, h));
  std::vector<int> sorted = classes;
  std::sort(sorted.begin(), sorted.end());
  int chosen = sorted[0];
  std::size_t bestCount = hes.size() + 1;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t e = i;
    while (e < sorted.size() && sorted[e] == sorted[i]) ++e;
    if (e - i < bestCount) {
      chosen = sorted[i];
      bestCount = e - i;
    }
    i = e;
  }
  std::vector<int> code, best;
  code.reserve(3 * hes.size());
  for (std::size_t i = 0; i < hes.size(); ++i)
    if (classes[i] == chosen) encode_from(g, hes[i], idx, order, code, best);
  for (int t : best) append_int(s, static_cast<std::uint32_t>(t));
  return s;
}

}  // namespace

std::string component_code(const CombinatorialMap& g) {
  std::vector<int> hes(g.half_edges()), ns(g.nodes()), idx(g.half_edges(), -1), order;
  std::iota(hes.begin(), hes.end(), 0);
  std::iota(ns.begin(), ns.end(), 0);
  return code_in_place(g, hes, ns, idx, order);
}

std::string canonical_signature(const CombinatorialMap& g) {
  std::vector<int> comp;
  const int c = g.components(comp);
  std::vector<std::vector<int>> hes(c), ns(c);
  for (int h = 0; h < g.half_edges(); ++h) hes[comp[g.node[h]]].push_back(h);
  for (int n = 0; n < g.nodes(); ++n) ns[comp[n]].push_back(n);
  std::vector<int> idx(g.half_edges(), -1), order;
  std::vector<std::string> codes;
  codes.reserve(c);
  for (int i = 0; i < c; ++i) codes.push_back(code_in_place(g, hes[i], ns[i], idx, order));
  std::sort(codes.begin(), codes.end());
  std::string s;
  append_int(s, static_cast<std::uint32_t>(g.freeLoops));
  append_int(s, static_cast<std::uint32_t>(c));
  for (const auto& code : codes) {
    append_int(s, static_cast<std::uint32_t>(code.size()));
    s += code;
  }
  return s;
}

}  // namespace kauffman
