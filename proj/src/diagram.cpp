#include "kauffman/diagram.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "kauffman/errors.hpp"

namespace kauffman {

// -------------------------------------------------------------------- braids

BraidWord parse_braid(std::string_view text) {
  BraidWord b;
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const std::string& msg) -> void {
    throw Error(ErrorKind::Parse, msg + " at position " + std::to_string(pos));
  };
  auto read_int = [&](long long& v) {
    const std::size_t start = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    const std::size_t digits = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == digits) {
      pos = start;
      return false;
    }
    if (pos - digits > 9) {
      pos = start;
      fail("integer too large");
    }
    v = std::stoll(std::string(text.substr(start, pos - start)));
    return true;
  };

  skip();
  int declared = 0;
  if (pos < text.size() && text[pos] == 'n') {
    ++pos;
    skip();
    if (pos >= text.size() || text[pos] != '=') fail("expected '=' after 'n'");
    ++pos;
    skip();
    long long n = 0;
    if (!read_int(n)) fail("expected strand count");
    if (n < 1) fail("strand count must be positive");
    declared = static_cast<int>(n);
    skip();
    if (pos >= text.size() || text[pos] != ';') fail("expected ';' after strand count");
    ++pos;
  }
  int maxAbs = 0;
  for (;;) {
    skip();
    if (pos >= text.size()) break;
    const std::size_t at = pos;
    long long v = 0;
    if (!read_int(v)) fail("expected a nonzero integer");
    if (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])))
      fail("malformed token");
    if (v == 0) {
      pos = at;
      fail("braid letters must be nonzero");
    }
    const int a = static_cast<int>(v < 0 ? -v : v);
    if (declared > 0 && a >= declared)
      throw Error(ErrorKind::Range, "letter " + std::to_string(v) + " at position " +
                                        std::to_string(at) + " needs more than " +
                                        std::to_string(declared) + " strands");
    maxAbs = std::max(maxAbs, a);
    b.letters.push_back(static_cast<int>(v));
  }
  b.strands = declared > 0 ? declared : maxAbs + 1;
  return b;
}

std::string to_text(const BraidWord& b) {
  std::string s = "n=" + std::to_string(b.strands) + ";";
  for (int l : b.letters) s += " " + std::to_string(l);
  return s;
}

int writhe(const BraidWord& b) {
  int w = 0;
  for (int l : b.letters) w += l > 0 ? 1 : -1;
  return w;
}

int closure_components(const BraidWord& b) {
  std::vector<int> perm(b.strands);
  std::iota(perm.begin(), perm.end(), 0);
  for (int l : b.letters) {
    const int i = std::abs(l) - 1;
    std::swap(perm[i], perm[i + 1]);
  }
  std::vector<char> seen(b.strands, 0);
  int c = 0;
  for (int i = 0; i < b.strands; ++i) {
    if (seen[i]) continue;
    ++c;
    for (int j = i; !seen[j]; j = perm[j]) seen[j] = 1;
  }
  return c;
}

LinkDiagram braid_to_link(const BraidWord& b) {
  for (int l : b.letters)
    if (l == 0 || std::abs(l) >= b.strands)
      throw Error(ErrorKind::Range, "braid letter out of range");
  MapBuilder mb;
  std::vector<int> top(b.strands, -1), pending(b.strands, -1);
  auto attach = [&](int p, int h) {
    if (pending[p] < 0) top[p] = h;
    else mb.link(pending[p], h);
  };
  for (int l : b.letters) {
    const int i = std::abs(l) - 1;
    const int f = mb.add_node(NodeKind::Crossing, 4);
    int tl, tr, bl, br;
    if (l > 0) {  // under-strand TL -> BR
      tl = f, bl = f + 1, br = f + 2, tr = f + 3;
    } else {  // under-strand TR -> BL
      tr = f, tl = f + 1, bl = f + 2, br = f + 3;
    }
    attach(i, tl);
    attach(i + 1, tr);
    pending[i] = bl;
    pending[i + 1] = br;
  }
  for (int p = 0; p < b.strands; ++p) {
    if (top[p] < 0) mb.add_free_loops(1);
    else mb.link(pending[p], top[p]);
  }
  return mb.build();
}

// ------------------------------------------------------------ record parsing

namespace {

struct Record {
  char type;                        // 'X' or 'W'
  std::vector<std::string> labels;  // 4 labels
  std::string wideLabel;            // W only, may be empty
  std::size_t pos;
};

std::vector<Record> parse_records(std::string_view text, bool allowWide) {
  std::vector<Record> out;
  std::size_t pos = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw Error(ErrorKind::Parse, msg + " at position " + std::to_string(pos));
  };
  auto skip = [&] {
    while (pos < text.size() &&
           (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == ','))
      ++pos;
  };
  auto label = [&]() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    const std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_' ||
            text[pos] == '-'))
      ++pos;
    if (pos == start) fail("expected an edge label");
    std::string s(text.substr(start, pos - start));
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    return s;
  };
  auto expect = [&](char c) {
    if (pos >= text.size() || text[pos] != c) fail(std::string("expected '") + c + "'");
    ++pos;
  };
  for (;;) {
    skip();
    if (pos >= text.size()) break;
    Record r;
    r.pos = pos;
    r.type = text[pos];
    if (r.type == 'X') {
      ++pos;
      expect('(');
      for (int i = 0; i < 4; ++i) {
        if (i) expect(',');
        r.labels.push_back(label());
      }
      expect(')');
    } else if (r.type == 'W' && allowWide) {
      ++pos;
      if (pos < text.size() && text[pos] == '[') {
        ++pos;
        r.wideLabel = label();
        expect(']');
      }
      expect('(');
      r.labels.push_back(label());
      expect(',');
      r.labels.push_back(label());
      expect(';');
      r.labels.push_back(label());
      expect(',');
      r.labels.push_back(label());
      expect(')');
    } else {
      fail(allowWide ? "expected an X or W record" : "expected an X record");
    }
    out.push_back(std::move(r));
  }
  return out;
}

CombinatorialMap build_from_records(const std::vector<Record>& recs) {
  MapBuilder mb;
  std::map<std::string, std::vector<int>> uses;
  for (const auto& r : recs) {
    if (r.type == 'X') {
      const int f = mb.add_node(NodeKind::Crossing, 4);
      for (int i = 0; i < 4; ++i) uses[r.labels[i]].push_back(f + i);
    } else {
      const int u = mb.add_node(NodeKind::Trivalent, 3);
      const int v = mb.add_node(NodeKind::Trivalent, 3);
      uses[r.labels[0]].push_back(u);
      uses[r.labels[1]].push_back(u + 1);
      mb.link(u + 2, v, EdgeKind::Wide);
      uses[r.labels[2]].push_back(v + 1);
      uses[r.labels[3]].push_back(v + 2);
    }
  }
  for (const auto& [l, hs] : uses) {
    if (hs.size() != 2)
      throw Error(ErrorKind::BadIncidence, "label '" + l + "' used " + std::to_string(hs.size()) +
                                               " times (expected 2)");
    mb.link(hs[0], hs[1]);
  }
  return mb.build();
}

}  // namespace

LinkDiagram parse_pd(std::string_view text) {
  const auto recs = parse_records(text, false);
  LinkDiagram d = build_from_records(recs);
  validate_link(d);
  return d;
}

REGraphDiagram parse_regraph(std::string_view text) {
  const auto recs = parse_records(text, true);
  std::set<std::string> wideLabels, crossingLabels, standardLabels;
  for (const auto& r : recs) {
    if (r.type == 'W' && !r.wideLabel.empty()) {
      if (!wideLabels.insert(r.wideLabel).second)
        throw Error(ErrorKind::BadIncidence, "wide label '" + r.wideLabel + "' declared twice");
    }
    for (const auto& l : r.labels) {
      standardLabels.insert(l);
      if (r.type == 'X') crossingLabels.insert(l);
    }
  }
  for (const auto& w : wideLabels) {
    if (crossingLabels.count(w))
      throw Error(ErrorKind::WideEdgeCrossing, "wide edge '" + w + "' passes through a crossing");
    if (standardLabels.count(w))
      throw Error(ErrorKind::BadIncidence, "wide label '" + w + "' also names a standard edge");
  }
  REGraphDiagram d = build_from_records(recs);
  validate_regraph(d);
  return d;
}

// ---------------------------------------------------------------- validation

void validate_link(const LinkDiagram& d) {
  d.check_structure();
  for (int n = 0; n < d.nodes(); ++n) {
    if (d.nodeKind[n] != NodeKind::Crossing || d.degree(n) != 4)
      throw Error(ErrorKind::InvalidGraph, "link diagram node is not a 4-valent crossing");
  }
  for (int h = 0; h < d.half_edges(); ++h)
    if (d.kind[h] != EdgeKind::Standard)
      throw Error(ErrorKind::InvalidGraph, "link diagram has a wide edge");
  if (!d.euler_ok()) throw Error(ErrorKind::NonPlanar, "Euler characteristic check failed");
}

void validate_regraph(const REGraphDiagram& d) {
  d.check_structure();
  int vertices = 0;
  for (int n = 0; n < d.nodes(); ++n) {
    const auto rot = d.rotation(n);
    switch (d.nodeKind[n]) {
      case NodeKind::Crossing:
        if (rot.size() != 4) throw Error(ErrorKind::InvalidGraph, "crossing of degree != 4");
        for (int h : rot)
          if (d.kind[h] == EdgeKind::Wide)
            throw Error(ErrorKind::WideEdgeCrossing, "a crossing touches a wide edge");
        {
          const int u = d.tag[n];
          if (u < 0 || u >= d.half_edges() || d.node[u] != n)
            throw Error(ErrorKind::InvalidGraph, "crossing without an under-strand");
        }
        break;
      case NodeKind::Trivalent: {
        ++vertices;
        if (rot.size() != 3) throw Error(ErrorKind::InvalidGraph, "vertex of degree != 3");
        int wide = 0;
        for (int h : rot) {
          if (d.kind[h] != EdgeKind::Wide) continue;
          ++wide;
          const int m = d.node[d.twin[h]];
          if (m == n) throw Error(ErrorKind::InvalidGraph, "wide loop");
          if (d.nodeKind[m] != NodeKind::Trivalent)
            throw Error(ErrorKind::WideEdgeCrossing, "wide edge ends at a non-vertex");
        }
        if (wide != 1)
          throw Error(ErrorKind::InvalidGraph, "vertex without exactly one wide half-edge");
        break;
      }
      default:
        throw Error(ErrorKind::InvalidGraph, "unexpected node kind in RE graph diagram");
    }
  }
  if (vertices % 2 != 0) throw Error(ErrorKind::OddVertexCount, "odd number of trivalent vertices");
  if (!d.euler_ok()) throw Error(ErrorKind::NonPlanar, "Euler characteristic check failed");
}

void validate_trivalent(const PlanarTrivalentGraph& g) {
  validate_regraph(g);
  if (g.count(NodeKind::Crossing) != 0)
    throw Error(ErrorKind::InvalidGraph, "planar trivalent graph has crossings");
}

// ----------------------------------------------------------------- structure

CombinatorialMap mirror(const CombinatorialMap& d) {
  CombinatorialMap m = d;
  for (int n = 0; n < m.nodes(); ++n)
    if (m.nodeKind[n] == NodeKind::Crossing) m.tag[n] = m.next[m.tag[n]];
  return m;
}

CombinatorialMap connected_sum(const CombinatorialMap& d1, int h1, const CombinatorialMap& d2,
                               int h2) {
  auto check = [](const CombinatorialMap& d, int h) {
    if (h == -1) {
      if (d.freeLoops < 1) throw Error(ErrorKind::BadEdge, "no free loop to sum along");
      return;
    }
    if (h < 0 || h >= d.half_edges()) throw Error(ErrorKind::BadEdge, "edge index out of range");
    if (d.kind[h] != EdgeKind::Standard)
      throw Error(ErrorKind::BadEdge, "connected sum along a wide edge");
    if (d.nodeKind[d.node[h]] == NodeKind::Boundary)
      throw Error(ErrorKind::BadEdge, "connected sum along a tangle endpoint");
  };
  check(d1, h1);
  check(d2, h2);
  CombinatorialMap u = disjoint_union(d1, d2);
  if (h1 == -1 || h2 == -1) {
    --u.freeLoops;  // summing with a circle leaves the other summand
    return u;
  }
  const int a = h1, b = h2 + d1.half_edges();
  const int ta = u.twin[a], tb = u.twin[b];
  u.twin[a] = tb;
  u.twin[tb] = a;
  u.twin[b] = ta;
  u.twin[ta] = b;
  return u;
}

std::vector<int> crossing_nodes(const CombinatorialMap& d) {
  std::vector<int> out;
  for (int n = 0; n < d.nodes(); ++n)
    if (d.nodeKind[n] == NodeKind::Crossing) out.push_back(n);
  return out;
}

namespace {

void resolve_into(MapRewriter& rw, const CombinatorialMap& d, int n, Resolution r) {
  const int h0 = d.tag[n];
  const int h1 = d.next[h0], h2 = d.next[h1], h3 = d.next[h2];
  rw.remove_node(n);
  switch (r) {
    case Resolution::A:
      rw.link(MapRewriter::port(h0), MapRewriter::port(h1));
      rw.link(MapRewriter::port(h2), MapRewriter::port(h3));
      break;
    case Resolution::B:
      rw.link(MapRewriter::port(h1), MapRewriter::port(h2));
      rw.link(MapRewriter::port(h3), MapRewriter::port(h0));
      break;
    case Resolution::Wide: {
      const int u = rw.add_node(NodeKind::Trivalent, 3);
      const int v = rw.add_node(NodeKind::Trivalent, 3);
      rw.link(MapRewriter::fresh(u), MapRewriter::port(h3));
      rw.link(MapRewriter::fresh(u + 1), MapRewriter::port(h0));
      rw.link(MapRewriter::fresh(u + 2), MapRewriter::fresh(v), EdgeKind::Wide);
      rw.link(MapRewriter::fresh(v + 1), MapRewriter::port(h1));
      rw.link(MapRewriter::fresh(v + 2), MapRewriter::port(h2));
      break;
    }
  }
}

}  // namespace

StateRecord resolve(const CombinatorialMap& d, const std::vector<Resolution>& choice) {
  const auto xs = crossing_nodes(d);
  if (xs.size() != choice.size()) throw Error(ErrorKind::Internal, "one choice per crossing");
  MapRewriter rw(d);
  StateRecord s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    resolve_into(rw, d, xs[i], choice[i]);
    if (choice[i] == Resolution::A) ++s.na;
    if (choice[i] == Resolution::B) ++s.nb;
  }
  s.graph = rw.build();
  return s;
}

CombinatorialMap resolve_one(const CombinatorialMap& d, int crossingNode, Resolution r) {
  if (d.nodeKind[crossingNode] != NodeKind::Crossing)
    throw Error(ErrorKind::Internal, "resolve_one on a non-crossing");
  MapRewriter rw(d);
  resolve_into(rw, d, crossingNode, r);
  return rw.build();
}

void for_each_state(const CombinatorialMap& d, const std::function<void(const StateRecord&)>& f) {
  const auto xs = crossing_nodes(d);
  std::vector<Resolution> choice(xs.size(), Resolution::A);
  for (;;) {
    f(resolve(d, choice));
    std::size_t i = choice.size();
    while (i > 0) {
      --i;
      if (choice[i] != Resolution::Wide) {
        choice[i] = static_cast<Resolution>(static_cast<int>(choice[i]) + 1);
        break;
      }
      choice[i] = Resolution::A;
      if (i == 0) return;
    }
    if (choice.empty()) return;
  }
}

std::vector<StateRecord> states(const CombinatorialMap& d) {
  std::vector<StateRecord> out;
  for_each_state(d, [&out](const StateRecord& s) { out.push_back(s); });
  return out;
}

PlanarTrivalentGraph circles(int k) {
  CombinatorialMap g;
  g.freeLoops = k;
  return g;
}

PlanarTrivalentGraph theta() { return parse_regraph("W(1,2;2,1)"); }

// ------------------------------------------------------------------ tangles

namespace {

// Adds 2n boundary nodes; returns half-edge ids of top and bottom endpoints.
void add_boundary(MapBuilder& mb, int n, std::vector<int>& top, std::vector<int>& bottom) {
  top.resize(n);
  bottom.resize(n);
  for (int i = 0; i < n; ++i) top[i] = mb.add_node(NodeKind::Boundary, 1, i);
  for (int i = 0; i < n; ++i) bottom[i] = mb.add_node(NodeKind::Boundary, 1, n + i);
}

void check_index(int n, int i) {
  if (i < 1 || i >= n) throw Error(ErrorKind::Range, "generator index out of range");
}

std::vector<int> boundary_half_edges(const CombinatorialMap& g, int first, int count) {
  std::vector<int> out(count, -1);
  for (int m = 0; m < g.nodes(); ++m) {
    if (g.nodeKind[m] != NodeKind::Boundary) continue;
    const int t = g.tag[m] - first;
    if (t >= 0 && t < count) out[t] = g.nodeHe[m];
  }
  return out;
}

}  // namespace

Tangle identity_tangle(int n) {
  MapBuilder mb;
  std::vector<int> top, bottom;
  add_boundary(mb, n, top, bottom);
  for (int i = 0; i < n; ++i) mb.link(top[i], bottom[i]);
  return {mb.build(), n};
}

Tangle t_tangle(int n, int i) {
  check_index(n, i);
  MapBuilder mb;
  std::vector<int> top, bottom;
  add_boundary(mb, n, top, bottom);
  for (int k = 0; k < n; ++k)
    if (k != i - 1 && k != i) mb.link(top[k], bottom[k]);
  mb.link(top[i - 1], top[i]);
  mb.link(bottom[i - 1], bottom[i]);
  return {mb.build(), n};
}

Tangle c_tangle(int n, int i) {
  check_index(n, i);
  MapBuilder mb;
  std::vector<int> top, bottom;
  add_boundary(mb, n, top, bottom);
  for (int k = 0; k < n; ++k)
    if (k != i - 1 && k != i) mb.link(top[k], bottom[k]);
  // u = (TR, TL, wide), v = (wide, BL, BR)
  const int u = mb.add_node(NodeKind::Trivalent, 3);
  const int v = mb.add_node(NodeKind::Trivalent, 3);
  mb.link(u, top[i]);
  mb.link(u + 1, top[i - 1]);
  mb.link(u + 2, v, EdgeKind::Wide);
  mb.link(v + 1, bottom[i - 1]);
  mb.link(v + 2, bottom[i]);
  return {mb.build(), n};
}

Tangle stack(const Tangle& x, const Tangle& y) {
  if (x.n != y.n) throw Error(ErrorKind::MixedArity, "stacking tangles of different arity");
  const int n = x.n;
  CombinatorialMap u = disjoint_union(x.map, y.map);
  const int off = x.map.half_edges();
  const auto xb = boundary_half_edges(x.map, n, n);
  const auto yt = boundary_half_edges(y.map, 0, n);
  MapRewriter rw(u);
  for (int i = 0; i < n; ++i) {
    rw.remove_node(u.node[xb[i]]);
    rw.remove_node(u.node[yt[i] + off]);
    rw.link(MapRewriter::port(xb[i]), MapRewriter::port(yt[i] + off));
  }
  return {rw.build(), n};
}

PlanarTrivalentGraph close_tangle(const Tangle& t) {
  const auto top = boundary_half_edges(t.map, 0, t.n);
  const auto bottom = boundary_half_edges(t.map, t.n, t.n);
  MapRewriter rw(t.map);
  for (int i = 0; i < t.n; ++i) {
    rw.remove_node(t.map.node[top[i]]);
    rw.remove_node(t.map.node[bottom[i]]);
    rw.link(MapRewriter::port(top[i]), MapRewriter::port(bottom[i]));
  }
  return rw.build();
}

// --------------------------------------------------------------------- JSON

namespace {

const char* kind_name(NodeKind k) {
  switch (k) {
    case NodeKind::Crossing: return "crossing";
    case NodeKind::Trivalent: return "vertex";
    case NodeKind::Boundary: return "boundary";
    case NodeKind::Flat: return "flat";
  }
  return "?";
}

}  // namespace

std::string to_json(const CombinatorialMap& g) {
  nlohmann::json j;
  j["freeLoops"] = g.freeLoops;
  auto& nodes = j["nodes"] = nlohmann::json::array();
  for (int n = 0; n < g.nodes(); ++n)
    nodes.push_back({{"kind", kind_name(g.nodeKind[n])}, {"first", g.nodeHe[n]}, {"tag", g.tag[n]}});
  j["twin"] = g.twin;
  j["next"] = g.next;
  j["node"] = g.node;
  auto& kinds = j["kind"] = nlohmann::json::array();
  for (auto k : g.kind) kinds.push_back(k == EdgeKind::Wide ? "wide" : "standard");
  return j.dump();
}

CombinatorialMap map_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
  CombinatorialMap g;
  try {
    g.freeLoops = j.value("freeLoops", 0);
    for (const auto& n : j.at("nodes")) {
      const std::string k = n.at("kind");
      NodeKind nk;
      if (k == "crossing") nk = NodeKind::Crossing;
      else if (k == "vertex") nk = NodeKind::Trivalent;
      else if (k == "boundary") nk = NodeKind::Boundary;
      else if (k == "flat") nk = NodeKind::Flat;
      else throw Error(ErrorKind::Parse, "unknown node kind '" + k + "'");
      g.nodeKind.push_back(nk);
      g.nodeHe.push_back(n.at("first").get<int>());
      g.tag.push_back(n.value("tag", -1));
    }
    g.twin = j.at("twin").get<std::vector<int>>();
    g.next = j.at("next").get<std::vector<int>>();
    g.node = j.at("node").get<std::vector<int>>();
    for (const auto& k : j.at("kind")) {
      const std::string s = k;
      g.kind.push_back(s == "wide" ? EdgeKind::Wide : EdgeKind::Standard);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
  const int H = g.half_edges();
  for (int h : g.node)
    if (h < 0 || h >= g.nodes()) throw Error(ErrorKind::Parse, "node index out of range");
  for (int x : g.next)
    if (x < 0 || x >= H) throw Error(ErrorKind::Parse, "rotation index out of range");
  for (int x : g.twin)
    if (x < 0 || x >= H) throw Error(ErrorKind::Parse, "twin index out of range");
  g.check_structure();
  return g;
}

}  // namespace kauffman
