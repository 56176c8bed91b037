#include "kauffman/skein.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_set>

#include "kauffman/errors.hpp"

namespace kauffman {

const char* to_string(ConfigTag t) {
  switch (t) {
    case ConfigTag::None: return "None";
    case ConfigTag::Circle: return "Circle";
    case ConfigTag::Lollipop: return "Lollipop";
    case ConfigTag::WideDigon: return "WideDigon";
    case ConfigTag::Triangle: return "Triangle";
    case ConfigTag::Square: return "Square";
  }
  return "?";
}

namespace {

using End = MapRewriter::End;
End P(int h) { return MapRewriter::port(h); }
End F(int h) { return MapRewriter::fresh(h); }

int wide_of(const CombinatorialMap& g, int n) {
  int h = g.nodeHe[n];
  for (int i = 0; i < 3; ++i, h = g.next[h])
    if (g.kind[h] == EdgeKind::Wide) return h;
  throw Error(ErrorKind::InvalidGraph, "vertex without a wide half-edge");
}

int edge_id(const CombinatorialMap& g, int h) { return std::min(h, g.twin[h]); }

// Flat order (x, y, z, t) around the wide edge through half-edge w.
std::array<int, 4> flat_slots(const CombinatorialMap& g, int w) {
  const int w2 = g.twin[w];
  const int x = g.next[w], y = g.next[x];
  const int z = g.next[w2], t = g.next[z];
  return {x, y, z, t};
}

void rotate_in_place(CombinatorialMap& g, int w) {
  if (g.kind[w] != EdgeKind::Wide) throw Error(ErrorKind::Internal, "h_rotate on a standard edge");
  const auto S = flat_slots(g, w);
  std::array<int, 4> Pt;
  for (int i = 0; i < 4; ++i) Pt[i] = g.twin[S[i]];
  auto slot_index = [&S](int h) {
    for (int j = 0; j < 4; ++j)
      if (S[j] == h) return j;
    return -1;
  };
  for (int i = 0; i < 4; ++i) {
    const int p = Pt[(i + 1) % 4];
    const int j = slot_index(p);
    const int target = j >= 0 ? S[(j + 3) % 4] : p;
    g.twin[S[i]] = target;
    if (j < 0) g.twin[p] = S[i];
  }
}

bool face_has_wide(const CombinatorialMap& g, const std::vector<int>& f) {
  return std::any_of(f.begin(), f.end(), [&g](int h) { return g.kind[h] == EdgeKind::Wide; });
}

std::vector<int> face_of(const CombinatorialMap& g, int h) {
  std::vector<int> f;
  int x = h;
  do {
    f.push_back(x);
    x = g.face_next(x);
    if (f.size() > static_cast<std::size_t>(g.half_edges()))
      throw Error(ErrorKind::Internal, "face tracing does not close");
  } while (x != h);
  return f;
}

// Rotates the wide edges lying on the face of `anchor` until that face is
// bounded by standard edges only; returns a half-edge on it.
int normalize_face(CombinatorialMap& g, int anchor, std::vector<Move>* script) {
  for (int guard = 0; guard < 16; ++guard) {
    const auto f = face_of(g, anchor);
    auto it = std::find_if(f.begin(), f.end(), [&g](int h) { return g.kind[h] == EdgeKind::Wide; });
    if (it == f.end()) return anchor;
    const int hw = *it;
    const int u = g.node[hw], v = g.node[g.twin[hw]];
    int next = -1;
    for (int h : f)
      if (g.node[h] != u && g.node[h] != v) {
        next = h;
        break;
      }
    if (next < 0) throw Error(ErrorKind::Internal, "no anchor outside the rotated wide edge");
    rotate_in_place(g, hw);
    if (script) script->push_back({Move::Rotate, hw});
    anchor = next;
  }
  throw Error(ErrorKind::Internal, "face normalization did not terminate");
}

// Distinct wide edges met by the nodes of a face.
int distinct_wides(const CombinatorialMap& g, const std::vector<int>& f) {
  std::set<int> ws;
  for (int h : f) ws.insert(edge_id(g, wide_of(g, g.node[h])));
  return static_cast<int>(ws.size());
}

// Standard triangle check used by square_move; fills the six ports and the
// inner/outer vertices.
bool standard_triangle(const CombinatorialMap& g, int h, std::array<int, 6>& ports,
                       std::array<int, 6>& nodes) {
  const auto f = face_of(g, h);
  if (f.size() != 3) return false;
  for (int x : f)
    if (g.kind[x] != EdgeKind::Standard) return false;
  const int X = g.node[f[1]];
  const int wX = wide_of(g, X);
  const int a = g.next[wX], b = g.next[a];
  const int Y = g.node[g.twin[a]], Z = g.node[g.twin[b]];
  if (X == Y || Y == Z || X == Z) return false;
  const int wY = wide_of(g, Y), wZ = wide_of(g, Z);
  const int c = g.next[wY], d = g.next[c];
  const int e = g.next[wZ], ff = g.next[e];
  if (d != g.twin[a] || g.node[g.twin[c]] != Z || ff != g.twin[c] || g.twin[e] != b) return false;
  const int Xo = g.node[g.twin[wX]], Yo = g.node[g.twin[wY]], Zo = g.node[g.twin[wZ]];
  const std::set<int> all{X, Y, Z, Xo, Yo, Zo};
  if (all.size() != 6) return false;
  auto outer_ports = [&g](int w, int& p, int& q) {
    p = g.next[g.twin[w]];
    q = g.next[p];
  };
  outer_ports(wX, ports[0], ports[1]);
  outer_ports(wY, ports[2], ports[3]);
  outer_ports(wZ, ports[4], ports[5]);
  nodes = {X, Y, Z, Xo, Yo, Zo};
  return true;
}

}  // namespace

// ------------------------------------------------------- local configurations

std::vector<LocalConfig> all_local_configs(const PlanarTrivalentGraph& g) {
  std::vector<LocalConfig> out;
  if (g.freeLoops > 0) out.push_back({ConfigTag::Circle, -1, 0});
  std::vector<LocalConfig> lol, dig, tri, sq;
  for (const auto& f : g.faces()) {
    int wides = 0;
    for (int h : f) wides += g.kind[h] == EdgeKind::Wide;
    const int stds = static_cast<int>(f.size()) - wides;
    if (f.size() == 1 && wides == 0) {
      lol.push_back({ConfigTag::Lollipop, f[0], 0});
    } else if (f.size() == 2 && wides == 1) {
      const int s = g.kind[f[0]] == EdgeKind::Standard ? f[0] : f[1];
      lol.push_back({ConfigTag::Lollipop, s, 1});
    } else if (stds == 2 && wides <= 2 && distinct_wides(g, f) == 2) {
      const int s = *std::find_if(f.begin(), f.end(),
                                  [&g](int h) { return g.kind[h] == EdgeKind::Standard; });
      LocalConfig c{wides == 0 ? ConfigTag::WideDigon
                               : (wides == 1 ? ConfigTag::Triangle : ConfigTag::Square),
                    s, wides};
      (wides == 0 ? dig : wides == 1 ? tri : sq).push_back(c);
    }
  }
  for (auto* v : {&lol, &dig, &tri, &sq}) out.insert(out.end(), v->begin(), v->end());
  return out;
}

LocalConfig find_local_config(const PlanarTrivalentGraph& g) {
  if (g.freeLoops > 0) return {ConfigTag::Circle, -1, 0};
  const auto all = all_local_configs(g);
  return all.empty() ? LocalConfig{} : all.front();
}

std::pair<RingElem, PlanarTrivalentGraph> apply_circle(const PlanarTrivalentGraph& g) {
  if (g.freeLoops < 1) throw Error(ErrorKind::Internal, "apply_circle without a circle");
  PlanarTrivalentGraph r = g;
  if (g.nodes() == 0 && g.freeLoops == 1) {
    r.freeLoops = 0;
    return {RingElem(1), r};
  }
  --r.freeLoops;
  return {constants().alpha, r};
}

std::pair<RingElem, PlanarTrivalentGraph> apply_lollipop(const PlanarTrivalentGraph& g,
                                                         const LocalConfig& c) {
  MapRewriter rw(g);
  const int s = c.h;
  if (c.variant == 0) {
    // loop at u; v's two standard ends are joined
    const int u = g.node[s];
    const int v = g.node[g.twin[wide_of(g, u)]];
    const int wv = wide_of(g, v);
    const int z = g.next[wv], t = g.next[z];
    rw.remove_node(u);
    rw.remove_node(v);
    rw.link(P(z), P(t));
  } else {
    // standard edge s parallel to the wide edge between u and v
    const int u = g.node[s], v = g.node[g.twin[s]];
    int x = -1, t = -1;
    for (int h : g.rotation(u))
      if (g.kind[h] == EdgeKind::Standard && h != s) x = h;
    for (int h : g.rotation(v))
      if (g.kind[h] == EdgeKind::Standard && h != g.twin[s]) t = h;
    rw.remove_node(u);
    rw.remove_node(v);
    rw.link(P(x), P(t));
  }
  return {constants().beta, rw.build()};
}

LinearCombo apply_wide_digon(const PlanarTrivalentGraph& g, const LocalConfig& c) {
  const auto f = face_of(g, c.h);
  if (f.size() != 2 || face_has_wide(g, f))
    throw Error(ErrorKind::Internal, "apply_wide_digon needs a standard digon");
  const int A = g.node[f[0]], B = g.node[f[1]];
  const int wA = wide_of(g, A), wB = wide_of(g, B);
  if (A == B || g.node[g.twin[wA]] == B) throw Error(ErrorKind::Internal, "degenerate digon");
  const int Ao = g.node[g.twin[wA]], Bo = g.node[g.twin[wB]];
  const int x0 = g.next[g.twin[wA]], x1 = g.next[x0];
  const int y0 = g.next[g.twin[wB]], y1 = g.next[y0];
  const auto& k = constants();
  auto base = [&](MapRewriter& rw) {
    rw.remove_node(A);
    rw.remove_node(B);
    rw.remove_node(Ao);
    rw.remove_node(Bo);
  };
  LinearCombo out;
  {
    MapRewriter rw(g);
    base(rw);
    rw.link(P(x1), P(y0));
    rw.link(P(x0), P(y1));
    out.add(RingElem(1) - RingElem::A() * RingElem::B(), rw.build());
  }
  {
    MapRewriter rw(g);
    base(rw);
    rw.link(P(x0), P(x1));
    rw.link(P(y0), P(y1));
    out.add(k.gamma, rw.build());
  }
  {
    MapRewriter rw(g);
    base(rw);
    const int u = rw.add_node(NodeKind::Trivalent, 3);
    const int v = rw.add_node(NodeKind::Trivalent, 3);
    rw.link(F(u), P(x0));
    rw.link(F(u + 1), P(x1));
    rw.link(F(u + 2), F(v), EdgeKind::Wide);
    rw.link(F(v + 1), P(y0));
    rw.link(F(v + 2), P(y1));
    out.add(-(RingElem::A() + RingElem::B()), rw.build());
  }
  return out;
}

PlanarTrivalentGraph h_rotate(const PlanarTrivalentGraph& g, int wide) {
  PlanarTrivalentGraph r = g;
  rotate_in_place(r, wide);
  return r;
}

std::pair<PlanarTrivalentGraph, int> normalize_to_digon(const PlanarTrivalentGraph& g,
                                                        const LocalConfig& c) {
  PlanarTrivalentGraph r = g;
  const int h = normalize_face(r, c.h, nullptr);
  return {std::move(r), h};
}

LinearCombo square_move(const PlanarTrivalentGraph& g, int h) {
  std::array<int, 6> p, nodes;
  if (!standard_triangle(g, h, p, nodes))
    throw Error(ErrorKind::Internal, "square_move needs a standard triangle with outward wides");
  const auto& k = constants();
  const RingElem AB = RingElem::A() * RingElem::B();
  auto base = [&](MapRewriter& rw) {
    for (int n : nodes) rw.remove_node(n);
  };
  LinearCombo out;
  {
    // flipped triangle: outer vertices hold (p1,p2), (p3,p4), (p5,p0)
    MapRewriter rw(g);
    base(rw);
    int in[3], ou[3];
    for (int i = 0; i < 3; ++i) {
      ou[i] = rw.add_node(NodeKind::Trivalent, 3);
      in[i] = rw.add_node(NodeKind::Trivalent, 3);
    }
    for (int i = 0; i < 3; ++i) {
      rw.link(F(ou[i]), P(p[(2 * i + 1) % 6]));
      rw.link(F(ou[i] + 1), P(p[(2 * i + 2) % 6]));
      rw.link(F(ou[i] + 2), F(in[i]), EdgeKind::Wide);
      // in[i] = (w, to next, to prev)
      rw.link(F(in[i] + 1), F(in[(i + 1) % 3] + 2));
    }
    out.terms.emplace_back(RingElem(1), rw.build());
  }
  for (int i = 0; i < 6; ++i) {
    MapRewriter rw(g);
    base(rw);
    rw.link(P(p[i]), P(p[(i + 1) % 6]));
    const int u = rw.add_node(NodeKind::Trivalent, 3);
    const int v = rw.add_node(NodeKind::Trivalent, 3);
    rw.link(F(u), P(p[(i + 2) % 6]));
    rw.link(F(u + 1), P(p[(i + 3) % 6]));
    rw.link(F(u + 2), F(v), EdgeKind::Wide);
    rw.link(F(v + 1), P(p[(i + 4) % 6]));
    rw.link(F(v + 2), P(p[(i + 5) % 6]));
    out.add(i % 2 == 0 ? AB : -AB, rw.build());
  }
  for (int parity = 1; parity >= 0; --parity) {
    MapRewriter rw(g);
    base(rw);
    for (int j = 0; j < 3; ++j) rw.link(P(p[(2 * j + parity) % 6]), P(p[(2 * j + parity + 1) % 6]));
    out.add(parity == 1 ? k.delta : -k.delta, rw.build());
  }
  return out;
}

// ------------------------------------------------------------------- search

std::string flat_key(const PlanarTrivalentGraph& g) {
  MapRewriter rw(g);
  for (int h = 0; h < g.half_edges(); ++h) {
    if (g.kind[h] != EdgeKind::Wide || h > g.twin[h]) continue;
    const auto S = flat_slots(g, h);
    rw.remove_node(g.node[h]);
    rw.remove_node(g.node[g.twin[h]]);
    const int f = rw.add_node(NodeKind::Flat, 4);
    for (int i = 0; i < 4; ++i) rw.link(F(f + i), P(S[i]));
  }
  return canonical_signature(rw.build());
}

namespace {

bool reducible(const PlanarTrivalentGraph& g) {
  for (const auto& c : all_local_configs(g))
    if (c.tag != ConfigTag::None) return true;
  return false;
}

// Candidate flips: one standard half-edge per face that collapses to a
// triangle (three standard edges, three distinct wide edges).
std::vector<int> flip_candidates(const PlanarTrivalentGraph& g) {
  std::vector<int> out;
  for (const auto& f : g.faces()) {
    int stds = 0;
    for (int h : f) stds += g.kind[h] == EdgeKind::Standard;
    if (stds != 3 || f.size() > 6) continue;
    if (distinct_wides(g, f) != 3) continue;
    out.push_back(*std::find_if(f.begin(), f.end(),
                                [&g](int h) { return g.kind[h] == EdgeKind::Standard; }));
  }
  return out;
}

// Applies rotations plus a flip; returns false if the face is not a
// standard triangle after normalization.
bool apply_flip(PlanarTrivalentGraph& g, int h, std::vector<Move>& script) {
  std::vector<Move> local;
  int a = normalize_face(g, h, &local);
  std::array<int, 6> p, nodes;
  if (!standard_triangle(g, a, p, nodes)) return false;
  local.push_back({Move::Flip, a});
  g = square_move(g, a).terms.front().second;
  script.insert(script.end(), local.begin(), local.end());
  return true;
}

}  // namespace

std::vector<Move> alternating_walk_reduce(const PlanarTrivalentGraph& g) {
  // Breadth-first over the flip orbit of g, keyed by the rotation-invariant
  // collapse. Triangle flips keep the vertex count, so the orbit is finite.
  struct Node {
    PlanarTrivalentGraph g;
    int parent;
    std::vector<Move> moves;
  };
  std::vector<Node> nodes;
  nodes.push_back({g, -1, {}});
  std::unordered_set<std::string> seen{flat_key(g)};
  constexpr std::size_t kLimit = 200000;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (int h : flip_candidates(nodes[i].g)) {
      PlanarTrivalentGraph next = nodes[i].g;
      std::vector<Move> moves;
      if (!apply_flip(next, h, moves)) continue;
      if (!seen.insert(flat_key(next)).second) continue;
      const bool done = reducible(next);
      nodes.push_back({std::move(next), static_cast<int>(i), std::move(moves)});
      if (done) {
        std::vector<Move> script;
        for (int j = static_cast<int>(nodes.size()) - 1; j > 0; j = nodes[j].parent)
          script.insert(script.begin(), nodes[j].moves.begin(), nodes[j].moves.end());
        return script;
      }
      if (nodes.size() > kLimit) throw Error(ErrorKind::Internal, "flip search limit exceeded");
    }
  }
  throw Error(ErrorKind::Internal, "flip orbit contains no reducible configuration");
}

// --------------------------------------------------------------------- memo

std::optional<RingElem> MemoTable::find(const std::string& sig) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = map_.find(sig);
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

void MemoTable::insert(const std::string& sig, const RingElem& v, bool check) {
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, inserted] = map_.try_emplace(sig, v);
  if (!inserted && check && !(it->second == v))
    throw Error(ErrorKind::Internal, "memo entry assigned two different values");
}

std::size_t MemoTable::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return map_.size();
}

void MemoTable::clear() {
  std::lock_guard<std::mutex> lock(mu_);
  map_.clear();
}

std::vector<std::pair<std::string, RingElem>> MemoTable::entries() const {
  std::lock_guard<std::mutex> lock(mu_);
  return {map_.begin(), map_.end()};
}

// ------------------------------------------------------------------- engine

void SkeinEngine::note(const std::string& s) {
  if (opts_.trace) opts_.trace->push_back(s);
}

RingElem SkeinEngine::evaluate(const LinearCombo& x) {
  RingAccumulator acc;
  for (const auto& [c, g] : x.terms) acc.add(c * evaluate(g));
  return acc.result();
}

RingElem SkeinEngine::evaluate(const PlanarTrivalentGraph& g) {
  std::vector<int> comp;
  const int c = g.components(comp);
  const int k = c + g.freeLoops;
  if (k == 0) return RingElem(1);
  if (c == 1 && g.freeLoops == 0) return eval_connected(g);
  RingElem v = pow(constants().alpha, k - 1);
  for (int i = 0; i < c; ++i) v *= eval_connected(extract_component(g, comp, i));
  return v;
}

RingElem SkeinEngine::eval_connected(const PlanarTrivalentGraph& g) {
  const std::string sig = canonical_signature(g);
  if (auto hit = memo_.find(sig)) {
    if (!opts_.rng) return *hit;
  }
  RingElem v = reduce(g);
  memo_.insert(sig, v, opts_.checkMemo);
  return v;
}

RingElem SkeinEngine::reduce(const PlanarTrivalentGraph& g) {
  if (g.count(NodeKind::Trivalent) % 2 != 0)
    throw Error(ErrorKind::OddVertexCount, "intermediate graph with an odd vertex count");
  auto configs = all_local_configs(g);
  LocalConfig c;
  if (!configs.empty()) {
    if (opts_.rng) {
      std::uniform_int_distribution<std::size_t> pick(0, configs.size() - 1);
      c = configs[pick(*opts_.rng)];
    } else {
      c = configs.front();
    }
  }
  const int n = g.count(NodeKind::Trivalent);
  switch (c.tag) {
    case ConfigTag::Lollipop: {
      note(R"({"rule":"Lollipop","h":)" + std::to_string(c.h) + R"(,"vertices":)" +
           std::to_string(n) + "}");
      auto [f, r] = apply_lollipop(g, c);
      return f * evaluate(r);
    }
    case ConfigTag::WideDigon:
    case ConfigTag::Triangle:
    case ConfigTag::Square: {
      note(std::string(R"({"rule":")") + to_string(c.tag) + R"(","h":)" + std::to_string(c.h) +
           R"(,"vertices":)" + std::to_string(n) + "}");
      auto [r, h] = normalize_to_digon(g, c);
      return evaluate(apply_wide_digon(r, {ConfigTag::WideDigon, h, 0}));
    }
    case ConfigTag::Circle:
      throw Error(ErrorKind::Internal, "free loop inside a connected component");
    case ConfigTag::None:
      break;
  }
  ++fallbackRuns_;
  const auto script = alternating_walk_reduce(g);
  note(R"({"rule":"Fallback","moves":)" + std::to_string(script.size()) + R"(,"vertices":)" +
       std::to_string(n) + "}");
  RingAccumulator acc;
  PlanarTrivalentGraph cur = g;
  for (const auto& m : script) {
    if (m.kind == Move::Rotate) {
      rotate_in_place(cur, m.h);
      continue;
    }
    LinearCombo lc = square_move(cur, m.h);
    for (std::size_t i = 1; i < lc.terms.size(); ++i)
      acc.add(lc.terms[i].first * evaluate(lc.terms[i].second));
    cur = std::move(lc.terms.front().second);
  }
  acc.add(evaluate(cur));
  return acc.result();
}

SkeinEngine& default_engine() {
  static SkeinEngine e;
  return e;
}

RingElem evaluate(const PlanarTrivalentGraph& g) { return default_engine().evaluate(g); }

}  // namespace kauffman
