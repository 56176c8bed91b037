#include <doctest.h>

#include <map>

#include "generators.hpp"
#include "kauffman/errors.hpp"
#include "kauffman/fourvalent.hpp"
#include "kauffman/invariants.hpp"
#include "kauffman/skein.hpp"

using namespace kauffman;

namespace {

const RingElem A = RingElem::A(), B = RingElem::B();

int first_wide(const CombinatorialMap& g) {
  int h = 0;
  while (g.kind[h] != EdgeKind::Wide) ++h;
  return h;
}

std::vector<int> wide_half_edges(const CombinatorialMap& g) {
  std::vector<int> out;
  for (int h = 0; h < g.half_edges(); ++h)
    if (g.kind[h] == EdgeKind::Wide && h < g.twin[h]) out.push_back(h);
  return out;
}

// Coefficient sums per isomorphism class.
std::map<std::string, RingElem> collect(const LinearCombo& x) {
  std::map<std::string, RingElem> m;
  for (const auto& [c, g] : x.terms) m[canonical_signature(g)] += c;
  return m;
}

PlanarTrivalentGraph dumbbell() { return parse_regraph("W(1,1;2,2)"); }

// Standard triangle faces whose vertices all carry outward wide edges.
std::vector<int> standard_triangles(const CombinatorialMap& g) {
  std::vector<int> out;
  for (const auto& f : g.faces()) {
    if (f.size() != 3) continue;
    bool ok = true;
    for (int h : f) ok &= g.kind[h] == EdgeKind::Standard;
    if (!ok) continue;
    try {
      square_move(g, f[0]);
      out.push_back(f[0]);
    } catch (const Error&) {
    }
  }
  return out;
}

}  // namespace

TEST_CASE("circle rule and base case") {
  CHECK(evaluate(circles(1)) == RingElem(1));
  CHECK(evaluate(circles(2)) == constants().alpha);
  CHECK(evaluate(circles(4)) == pow(constants().alpha, 3));
  CHECK(find_local_config(circles(1)).tag == ConfigTag::Circle);
  auto [f1, r1] = apply_circle(circles(1));
  CHECK(f1 == RingElem(1));
  CHECK(r1.freeLoops == 0);
  auto [f2, r2] = apply_circle(disjoint_union(circles(1), theta()));
  CHECK(f2 == constants().alpha);
  CHECK(canonical_signature(r2) == canonical_signature(theta()));
}

TEST_CASE("lollipop rule") {
  // theta's wide edge bounds 2-gons with each standard edge
  const auto c = find_local_config(theta());
  CHECK(c.tag == ConfigTag::Lollipop);
  auto [f, r] = apply_lollipop(theta(), c);
  CHECK(f == constants().beta);
  CHECK(r.nodes() == 0);
  CHECK(r.freeLoops == 1);
  CHECK(evaluate(theta()) == constants().beta);
  CHECK(evaluate(dumbbell()) == constants().beta);
  // the kink state graph (wide resolution of a one-crossing curl) is a lollipop
  const auto st = states(braid_to_link(parse_braid("1")));
  RingElem total;
  for (const auto& s : st) total += RingElem::A(s.na) * RingElem::B(s.nb) * evaluate(s.graph);
  CHECK(total == RingElem::a());
}

TEST_CASE("wide digon rule") {
  // the double-wide Hopf state: two wide edges bounding a standard digon
  const auto hopf = braid_to_link(parse_braid("1 1"));
  const auto g = resolve(hopf, {Resolution::Wide, Resolution::Wide}).graph;
  const auto c = find_local_config(g);
  REQUIRE(c.tag == ConfigTag::WideDigon);
  const LinearCombo lc = apply_wide_digon(g, c);
  REQUIRE(lc.terms.size() == 3);
  for (const auto& [k, t] : lc.terms) CHECK(t.nodes() <= g.nodes() - 2);
  const auto& k = constants();
  CHECK(default_engine().evaluate(lc) == (RingElem(1) - A * B) * k.alpha + k.gamma - (A + B) * k.beta);
  CHECK(evaluate(g) == default_engine().evaluate(lc));
}

TEST_CASE("rotation") {
  const auto t = theta();
  const int w = first_wide(t);
  CHECK(canonical_signature(h_rotate(t, w)) == canonical_signature(dumbbell()));
  CHECK(canonical_signature(h_rotate(h_rotate(t, w), w)) == canonical_signature(t));
  CHECK_THROWS_AS(h_rotate(t, w == 0 ? 1 : 0), Error);
}

TEST_CASE("triangle and square configurations reduce through rotations") {
  kt::Rng rng(41);
  int tri = 0, sq = 0;
  for (int i = 0; i < 300 && (tri < 5 || sq < 5); ++i) {
    const auto g = kt::random_trivalent(rng, 12);
    for (const auto& c : all_local_configs(g)) {
      if (c.tag != ConfigTag::Triangle && c.tag != ConfigTag::Square) continue;
      (c.tag == ConfigTag::Triangle ? tri : sq) += 1;
      const auto [r, h] = normalize_to_digon(g, c);
      CHECK(r.nodes() == g.nodes());
      const LinearCombo lc = apply_wide_digon(r, {ConfigTag::WideDigon, h, 0});
      SkeinEngine e;
      CHECK(e.evaluate(lc) == e.evaluate(g));
    }
  }
  CHECK(tri >= 5);
  CHECK(sq >= 5);
}

TEST_CASE("triangle flip") {
  kt::Rng rng(2);
  int checked = 0;
  for (int i = 0; i < 8; ++i) {
    PlanarTrivalentGraph g = kt::octahedral_state(rng);
    const auto script = alternating_walk_reduce(g);
    for (const auto& m : script) {
      if (m.kind == Move::Rotate) {
        g = h_rotate(g, m.h);
        continue;
      }
      const LinearCombo lc = square_move(g, m.h);
      REQUIRE(lc.terms.size() == 9);
      CHECK(lc.terms.front().first == RingElem(1));
      CHECK(flat_key(lc.terms.front().second) != flat_key(g));
      for (std::size_t t = 1; t < lc.terms.size(); ++t) CHECK(lc.terms[t].second.nodes() < g.nodes());
      SkeinEngine e;
      CHECK(e.evaluate(lc) == e.evaluate(g));
      // flipping back: some triangle of the flipped graph returns to g and the
      // lower terms of the two flips cancel class by class
      const auto& f = lc.terms.front().second;
      const std::string sig = canonical_signature(g);
      bool back = false;
      for (int h : standard_triangles(f)) {
        const LinearCombo r = square_move(f, h);
        if (canonical_signature(r.terms.front().second) != sig) continue;
        LinearCombo both;
        for (std::size_t t = 1; t < lc.terms.size(); ++t) both.add(lc.terms[t].first, lc.terms[t].second);
        for (std::size_t t = 1; t < r.terms.size(); ++t) both.add(r.terms[t].first, r.terms[t].second);
        bool cancels = true;
        for (const auto& [k, v] : collect(both)) cancels &= v.is_zero();
        CHECK(cancels);
        back = true;
      }
      CHECK(back);
      ++checked;
      break;
    }
  }
  CHECK(checked == 8);
}

TEST_CASE("fallback on graphs with no reducible face") {
  kt::Rng rng(8);
  for (int i = 0; i < 6; ++i) {
    const auto g = kt::octahedral_state(rng);
    REQUIRE(find_local_config(g).tag == ConfigTag::None);
    const auto script = alternating_walk_reduce(g);
    REQUIRE_FALSE(script.empty());
    // replay: rotations keep the value, flips carry their lower terms
    PlanarTrivalentGraph cur = g;
    RingElem lower;
    SkeinEngine e;
    for (const auto& m : script) {
      if (m.kind == Move::Rotate) {
        cur = h_rotate(cur, m.h);
        continue;
      }
      const LinearCombo lc = square_move(cur, m.h);
      for (std::size_t t = 1; t < lc.terms.size(); ++t)
        lower += lc.terms[t].first * e.evaluate(lc.terms[t].second);
      cur = lc.terms.front().second;
    }
    CHECK(find_local_config(cur).tag != ConfigTag::None);
    CHECK(e.evaluate(cur) + lower == evaluate(g));
  }
}

TEST_CASE("dodecahedron: all faces pentagons") {
  const auto g = kt::dodecahedron();
  validate_trivalent(g);
  for (const auto& f : g.faces()) CHECK(f.size() == 5);
  CHECK(find_local_config(g).tag == ConfigTag::None);
  SkeinEngine e;
  const RingElem v = e.evaluate(g);
  CHECK(e.fallback_runs() >= 1);
  CHECK(specialize_soN(v, 2) == n2_closed_form(g));
}

TEST_CASE("memo never stores two values for one signature") {
  MemoTable m;
  m.insert("x", RingElem(1), true);
  m.insert("x", RingElem(1), true);
  CHECK_THROWS_AS(m.insert("x", RingElem(2), true), Error);
  CHECK(m.size() == 1);
}

TEST_CASE("trace output") {
  std::vector<std::string> trace;
  SkeinEngine e(EvalOptions{nullptr, &trace, true});
  e.evaluate(resolve(braid_to_link(parse_braid("1 1")), {Resolution::Wide, Resolution::Wide}).graph);
  REQUIRE_FALSE(trace.empty());
  CHECK(trace.front().find("\"rule\":\"WideDigon\"") != std::string::npos);
}

TEST_CASE("property: rotation invariance and disjoint-union law") {
  kt::Rng rng(77);
  const auto& k = constants();
  for (int i = 0; i < 60; ++i) {
    const auto g = kt::random_state_graph(rng, 12);
    const RingElem v = evaluate(g);
    for (int w : wide_half_edges(g)) REQUIRE(evaluate(h_rotate(g, w)) == v);
    const auto g2 = kt::random_trivalent(rng, 6);
    REQUIRE(evaluate(disjoint_union(g, g2)) == k.alpha * v * evaluate(g2));
  }
}

TEST_CASE("property: confluence under randomized rule and face choice") {
  kt::Rng gen(5);
  for (int i = 0; i < 80; ++i) {
    const auto g = i % 8 == 0 ? kt::octahedral_state(gen) : kt::random_state_graph(gen, 12);
    const RingElem ref = SkeinEngine().evaluate(g);
    for (int s = 0; s < 5; ++s) {
      std::mt19937_64 rng(1000 * i + s);
      SkeinEngine e(EvalOptions{&rng, nullptr, true});
      REQUIRE(e.evaluate(g) == ref);
    }
  }
}

TEST_CASE("property: N=2 specialization matches the closed form") {
  kt::Rng gen(6);
  for (int i = 0; i < 150; ++i) {
    const auto g = i % 10 == 0 ? kt::octahedral_state(gen) : kt::random_state_graph(gen, 14);
    REQUIRE(specialize_soN(evaluate(g), 2) == n2_closed_form(g));
  }
}

TEST_CASE("property: flat 4-valent evaluation agrees") {
  kt::Rng gen(9);
  for (int i = 0; i < 120; ++i) {
    const auto g = i % 10 == 0 ? kt::octahedral_state(gen) : kt::random_state_graph(gen, 12);
    FourValentEvaluator ev;
    REQUIRE(ev.evaluate(collapse(g)) == evaluate(g));
  }
  FourValentEvaluator ev;
  CHECK(ev.evaluate(collapse(kt::dodecahedron())) == evaluate(kt::dodecahedron()));
}

TEST_CASE("property: memo entries are consistent with fresh evaluation") {
  kt::Rng gen(12);
  SkeinEngine e;
  for (int i = 0; i < 40; ++i) e.evaluate(kt::random_state_graph(gen, 10));
  const auto entries = e.memo().entries();
  REQUIRE(entries.size() > 20);
  // evaluate again through a second engine with checking on: collisions would throw
  SkeinEngine f(EvalOptions{nullptr, nullptr, true});
  kt::Rng again(12);
  for (int i = 0; i < 40; ++i) {
    const auto g = kt::random_state_graph(again, 10);
    REQUIRE(f.evaluate(g) == e.evaluate(g));
  }
  CHECK(f.memo().size() == e.memo().size());
}
