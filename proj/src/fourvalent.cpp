#include "kauffman/fourvalent.hpp"

#include <array>
#include <unordered_set>

#include "kauffman/errors.hpp"

namespace kauffman {

namespace {

using End = MapRewriter::End;
End P(int h) { return MapRewriter::port(h); }
End F(int h) { return MapRewriter::fresh(h); }

struct Rule {
  enum Kind { Curl, Digon } kind;
  int h;
};

std::vector<Rule> rules(const Planar4Graph& g) {
  std::vector<Rule> curls, digons;
  for (const auto& f : g.faces()) {
    if (f.size() == 1) curls.push_back({Rule::Curl, f[0]});
    else if (f.size() == 2 && g.node[f[0]] != g.node[f[1]]) digons.push_back({Rule::Digon, f[0]});
  }
  curls.insert(curls.end(), digons.begin(), digons.end());
  return curls;
}

Planar4Graph curl(const Planar4Graph& g, int e) {
  const int v = g.node[e];
  std::vector<int> rest;
  for (int h : g.rotation(v))
    if (h != e && h != g.twin[e]) rest.push_back(h);
  MapRewriter rw(g);
  rw.remove_node(v);
  rw.link(P(rest[0]), P(rest[1]));
  return rw.build();
}

LinearCombo digon(const Planar4Graph& g, int e0) {
  const int e1 = g.face_next(e0);
  const int X = g.node[e0], Y = g.node[e1];
  const int x0 = g.next[e0], x1 = g.next[x0];
  const int y0 = g.next[e1], y1 = g.next[y0];
  LinearCombo out;
  auto fresh_rw = [&] {
    MapRewriter rw(g);
    rw.remove_node(X);
    rw.remove_node(Y);
    return rw;
  };
  {
    auto rw = fresh_rw();
    rw.link(P(x1), P(y0));
    rw.link(P(x0), P(y1));
    out.add(RingElem(1) - RingElem::A() * RingElem::B(), rw.build());
  }
  {
    auto rw = fresh_rw();
    rw.link(P(x0), P(x1));
    rw.link(P(y0), P(y1));
    out.add(constants().gamma, rw.build());
  }
  {
    auto rw = fresh_rw();
    const int f = rw.add_node(NodeKind::Flat, 4);
    const int ports[4] = {x0, x1, y0, y1};
    for (int i = 0; i < 4; ++i) rw.link(F(f + i), P(ports[i]));
    out.add(-(RingElem::A() + RingElem::B()), rw.build());
  }
  return out;
}

// Triangle faces with three distinct vertices; fills the outer ports in
// counterclockwise order starting at the vertex of e0.
bool triangle(const Planar4Graph& g, int e0, std::array<int, 6>& p, std::array<int, 3>& vs) {
  const int e1 = g.face_next(e0), e2 = g.face_next(e1);
  if (g.face_next(e2) != e0) return false;
  vs = {g.node[e0], g.node[e2], g.node[e1]};
  if (vs[0] == vs[1] || vs[1] == vs[2] || vs[0] == vs[2]) return false;
  const int lead[3] = {e0, e2, e1};
  for (int k = 0; k < 3; ++k) {
    p[2 * k] = g.next[lead[k]];
    p[2 * k + 1] = g.next[p[2 * k]];
  }
  return true;
}

LinearCombo flip(const Planar4Graph& g, int e0) {
  std::array<int, 6> p;
  std::array<int, 3> vs;
  if (!triangle(g, e0, p, vs)) throw Error(ErrorKind::Internal, "flip needs a triangle face");
  auto fresh_rw = [&] {
    MapRewriter rw(g);
    for (int v : vs) rw.remove_node(v);
    return rw;
  };
  LinearCombo out;
  {
    auto rw = fresh_rw();
    int o[3];
    for (int k = 0; k < 3; ++k) o[k] = rw.add_node(NodeKind::Flat, 4);
    for (int k = 0; k < 3; ++k) {
      rw.link(F(o[k]), P(p[(2 * k + 1) % 6]));
      rw.link(F(o[k] + 1), P(p[(2 * k + 2) % 6]));
      rw.link(F(o[k] + 2), F(o[(k + 1) % 3] + 3));
    }
    out.terms.emplace_back(RingElem(1), rw.build());
  }
  const RingElem AB = RingElem::A() * RingElem::B();
  for (int i = 0; i < 6; ++i) {
    auto rw = fresh_rw();
    rw.link(P(p[i]), P(p[(i + 1) % 6]));
    const int f = rw.add_node(NodeKind::Flat, 4);
    for (int j = 0; j < 4; ++j) rw.link(F(f + j), P(p[(i + 2 + j) % 6]));
    out.add(i % 2 == 0 ? AB : -AB, rw.build());
  }
  for (int par = 0; par < 2; ++par) {
    auto rw = fresh_rw();
    for (int j = 0; j < 3; ++j) rw.link(P(p[(2 * j + par) % 6]), P(p[(2 * j + par + 1) % 6]));
    out.add(par == 1 ? constants().delta : -constants().delta, rw.build());
  }
  return out;
}

std::vector<int> flips(const Planar4Graph& g) {
  std::vector<int> out;
  std::array<int, 6> p;
  std::array<int, 3> vs;
  for (const auto& f : g.faces())
    if (f.size() == 3 && triangle(g, f[0], p, vs)) out.push_back(f[0]);
  return out;
}

// Shortest flip sequence (each flip taken along its leading term) to a graph
// with a curl or a digon.
std::vector<int> flip_path(const Planar4Graph& g) {
  struct Node {
    Planar4Graph g;
    int parent;
    int h;
  };
  std::vector<Node> q{{g, -1, -1}};
  std::unordered_set<std::string> seen{canonical_signature(g)};
  for (std::size_t i = 0; i < q.size(); ++i) {
    for (int h : flips(q[i].g)) {
      Planar4Graph n = flip(q[i].g, h).terms.front().second;
      if (!seen.insert(canonical_signature(n)).second) continue;
      const bool done = !rules(n).empty();
      q.push_back({std::move(n), static_cast<int>(i), h});
      if (done) {
        std::vector<int> path;
        for (int j = static_cast<int>(q.size()) - 1; j > 0; j = q[j].parent)
          path.insert(path.begin(), q[j].h);
        return path;
      }
      if (q.size() > 200000) throw Error(ErrorKind::Internal, "4-valent flip search limit exceeded");
    }
  }
  throw Error(ErrorKind::Internal, "4-valent flip orbit has no curl or digon");
}

}  // namespace

Planar4Graph collapse(const PlanarTrivalentGraph& g) {
  MapRewriter rw(g);
  for (int h = 0; h < g.half_edges(); ++h) {
    if (g.kind[h] != EdgeKind::Wide || h > g.twin[h]) continue;
    const int w2 = g.twin[h];
    const int ports[4] = {g.next[h], g.next[g.next[h]], g.next[w2], g.next[g.next[w2]]};
    rw.remove_node(g.node[h]);
    rw.remove_node(g.node[w2]);
    const int f = rw.add_node(NodeKind::Flat, 4);
    for (int i = 0; i < 4; ++i) rw.link(F(f + i), P(ports[i]));
  }
  return rw.build();
}

void validate_planar4(const Planar4Graph& h) {
  h.check_structure();
  for (int n = 0; n < h.nodes(); ++n)
    if (h.nodeKind[n] != NodeKind::Flat || h.degree(n) != 4)
      throw Error(ErrorKind::InvalidGraph, "4-valent graph with a non-flat node");
  if (!h.euler_ok()) throw Error(ErrorKind::NonPlanar, "4-valent graph is not planar");
}

RingElem FourValentEvaluator::evaluate(const Planar4Graph& h) {
  std::vector<int> comp;
  const int c = h.components(comp);
  const int k = c + h.freeLoops;
  if (k == 0) return RingElem(1);
  RingElem v = pow(constants().alpha, k - 1);
  for (int i = 0; i < c; ++i) v *= connected(extract_component(h, comp, i));
  return v;
}

RingElem FourValentEvaluator::connected(const Planar4Graph& h) {
  const std::string sig = canonical_signature(h);
  if (!rng_)
    if (auto hit = memo_.find(sig)) return *hit;
  RingElem v = reduce(h);
  memo_.insert(sig, v, true);
  return v;
}

RingElem FourValentEvaluator::reduce(const Planar4Graph& h) {
  auto rs = rules(h);
  if (!rs.empty()) {
    Rule r = rs.front();
    if (rng_) r = rs[std::uniform_int_distribution<std::size_t>(0, rs.size() - 1)(*rng_)];
    if (r.kind == Rule::Curl) return constants().beta * evaluate(curl(h, r.h));
    RingAccumulator acc;
    for (const auto& [c, g] : digon(h, r.h).terms) acc.add(c * evaluate(g));
    return acc.result();
  }
  ++fallbackRuns_;
  RingAccumulator acc;
  Planar4Graph cur = h;
  for (int e : flip_path(h)) {
    LinearCombo lc = flip(cur, e);
    for (std::size_t i = 1; i < lc.terms.size(); ++i)
      acc.add(lc.terms[i].first * evaluate(lc.terms[i].second));
    cur = std::move(lc.terms.front().second);
  }
  acc.add(evaluate(cur));
  return acc.result();
}

RingElem evaluate4(const Planar4Graph& h) {
  static FourValentEvaluator ev;
  return ev.evaluate(h);
}

RingElem kauffman_via_4valent(const LinkDiagram& d, FourValentEvaluator* ev) {
  validate_link(d);
  static FourValentEvaluator shared;
  FourValentEvaluator& e = ev ? *ev : shared;
  std::vector<int> xs;
  for (int n = 0; n < d.nodes(); ++n)
    if (d.nodeKind[n] == NodeKind::Crossing) xs.push_back(n);
  const int c = static_cast<int>(xs.size());
  std::vector<int> choice(c, 0);
  RingAccumulator acc;
  for (;;) {
    MapRewriter rw(d);
    int na = 0, nb = 0;
    for (int k = 0; k < c; ++k) {
      const int n = xs[k];
      const int h0 = d.tag[n], h1 = d.next[h0], h2 = d.next[h1], h3 = d.next[h2];
      rw.remove_node(n);
      if (choice[k] == 0) {
        ++na;
        rw.link(P(h0), P(h1));
        rw.link(P(h2), P(h3));
      } else if (choice[k] == 1) {
        ++nb;
        rw.link(P(h1), P(h2));
        rw.link(P(h3), P(h0));
      } else {
        const int f = rw.add_node(NodeKind::Flat, 4);
        const int hs[4] = {h0, h1, h2, h3};
        for (int i = 0; i < 4; ++i) rw.link(F(f + i), P(hs[i]));
      }
    }
    acc.add_scaled(LaurentPoly::monomial({na, nb, 0}), e.evaluate(rw.build()));
    int k = c - 1;
    while (k >= 0 && choice[k] == 2) choice[k--] = 0;
    if (k < 0) break;
    ++choice[k];
  }
  return acc.result();
}

}  // namespace kauffman
