#include <doctest.h>

#include "dubrovnik.hpp"
#include "generators.hpp"
#include "kauffman/errors.hpp"
#include "kauffman/fourvalent.hpp"
#include "kauffman/invariants.hpp"

using namespace kauffman;

namespace {

const RingElem A = RingElem::A(), B = RingElem::B(), a = RingElem::a();
const QPoly q = QPoly::q();

RingElem hopf_value() {
  const RingElem s = a - RingElem::a(-1);
  return s * (A - B) + s * RingElem::inv_A_minus_B() + RingElem(1);
}

RingElem link_value(const LinkDiagram& d) { return kauffman_state_sum(d).value; }
RingElem braid_value(const BraidWord& b) {
  StateSumOptions o;
  o.threads = 0;
  return braid_state_sum(b, o).value;
}

BraidWord splice(BraidWord b, std::size_t at, const std::vector<int>& w) {
  b.letters.insert(b.letters.begin() + static_cast<long>(at), w.begin(), w.end());
  return b;
}

TangleCombo word(int n, const std::vector<std::pair<char, int>>& ls) {
  Tangle t = identity_tangle(n);
  for (auto [k, i] : ls) t = stack(t, k == 't' ? t_tangle(n, i) : k == 'c' ? c_tangle(n, i) : identity_tangle(n));
  return {{{RingElem(1), t}}};
}

TangleCombo operator*(const TangleCombo& x, const TangleCombo& y) {
  TangleCombo r;
  for (const auto& [c1, t1] : x.terms)
    for (const auto& [c2, t2] : y.terms) r.terms.emplace_back(c1 * c2, stack(t1, t2));
  return r;
}

TangleCombo operator+(TangleCombo x, const TangleCombo& y) {
  x.terms.insert(x.terms.end(), y.terms.begin(), y.terms.end());
  return x;
}

TangleCombo scale(const RingElem& c, TangleCombo x) {
  for (auto& t : x.terms) t.first = c * t.first;
  return x;
}

}  // namespace

TEST_CASE("state sum examples") {
  CHECK(link_value(circles(1)) == RingElem(1));
  const auto r = braid_state_sum(parse_braid("1 1"));
  CHECK(r.value == hopf_value());
  CHECK(r.statesEvaluated == 9);
  CHECK(r.writhe == 2);
  CHECK(r.source == Source::StateSum);
  CHECK(link_value(parse_pd("X(1,3,2,4) X(3,1,4,2)")) == hopf_value());
  CHECK(braid_value(parse_braid("1 -1")) == constants().alpha);
}

TEST_CASE("graph invariant examples") {
  CHECK(regraph_invariant(theta()).value == constants().beta);
  CHECK(regraph_invariant(theta()).statesEvaluated == 1);
  const auto g = parse_regraph("X(4,3,2,1) X(3,6,5,2) W(6,4;1,5)");
  CHECK(so_n(regraph_invariant(g), 2) == -QPoly::q(-1) - QPoly::q(-3));
  kt::Rng rng(3);
  for (int i = 0; i < 10; ++i) {
    const auto d = kt::equal_components_crossing(rng, 8);
    CHECK(so_n(regraph_invariant(d), 2) == QPoly(0));
  }
}

TEST_CASE("normalization") {
  CHECK(normalized(braid_state_sum(parse_braid("n=1;"))) == RingElem(1));
  CHECK(normalized(braid_state_sum(parse_braid("1"))) == RingElem(1));
  const auto t = braid_state_sum(parse_braid("1 1 1"));
  CHECK(normalized(t) == RingElem::a(-3) * t.value);
  CHECK_THROWS_AS(normalized(regraph_invariant(theta())), Error);
}

TEST_CASE("rho expansion and trace") {
  CHECK(rho_expand(parse_braid("n=2;")).terms.size() == 1);
  const auto s = rho_expand(parse_braid("1"));
  REQUIRE(s.terms.size() == 3);
  const std::string sig[3] = {canonical_signature(close_tangle(identity_tangle(2))),
                              canonical_signature(close_tangle(t_tangle(2, 1))),
                              canonical_signature(close_tangle(c_tangle(2, 1)))};
  const RingElem co[3] = {A, B, RingElem(1)};
  for (int k = 0; k < 3; ++k) {
    bool found = false;
    for (const auto& [c, t] : s.terms)
      found |= c == co[k] && canonical_signature(close_tangle(t)) == sig[k];
    CHECK(found);
  }
  CHECK(rho_expand(parse_braid("1 -1")).terms.size() == 9);
  CHECK(rho_expand(parse_braid("n=3; 1 2 -1 2")).terms.size() == 81);
  CHECK(trace(rho_expand(parse_braid("1 -1"))) == trace(word(2, {})));
  CHECK(trace(word(2, {})) == constants().alpha);
  CHECK(trace(word(2, {{'t', 1}})) == RingElem(1));
  CHECK(trace(word(2, {{'c', 1}})) == constants().beta);
  CHECK_THROWS_AS(trace(word(2, {}) + word(3, {})), Error);
}

TEST_CASE("bracket examples") {
  CHECK(bracket(parse_braid("n=1;")) == RingElem(1));
  CHECK(bracket(parse_braid("1 1")) == RingElem::a(-2) * hopf_value());
}

TEST_CASE("SO(N) specialization") {
  for (int N = 2; N <= 5; ++N) CHECK(so_n(braid_state_sum(parse_braid("n=1;")), N) == QPoly(1));
  const QPoly z = q - QPoly::q(-1);
  CHECK(so_n(braid_state_sum(parse_braid("1 1")), 2) == z * z + QPoly(2));
  CHECK(specialize_soN(constants().alpha, 2) == QPoly(2));
  CHECK_THROWS_AS(so_n(braid_state_sum(parse_braid("1")), 1), Error);
}

TEST_CASE("N=2 closed form") {
  CHECK(n2_closed_form(circles(1)) == QPoly(1));
  CHECK(n2_closed_form(theta()) == -q - QPoly::q(-1));
  CHECK(n2_closed_form(disjoint_union(theta(), circles(1))) == QPoly(2) * (-q - QPoly::q(-1)));
}

TEST_CASE("algebra relations hold under the trace") {
  const int n = 3;
  using W = std::vector<std::pair<char, int>>;
  auto w = [&](const W& x) { return word(n, x); };
  const auto& k = constants();
  std::vector<std::pair<TangleCombo, TangleCombo>> rel;
  for (int i = 1; i <= 2; ++i) {
    const int j = 3 - i;
    rel.push_back({w({{'t', i}, {'t', j}, {'t', i}}), w({{'t', i}})});
    rel.push_back({w({{'t', i}, {'t', i}}), scale(k.alpha, w({{'t', i}}))});
    rel.push_back({w({{'c', i}, {'t', i}}), scale(k.beta, w({{'t', i}}))});
    rel.push_back({w({{'t', i}, {'c', i}}), scale(k.beta, w({{'t', i}}))});
    rel.push_back({w({{'c', i}, {'c', i}}), scale(RingElem(1) - A * B, w({})) + scale(k.gamma, w({{'t', i}})) +
                                                scale(-(A + B), w({{'c', i}}))});
  }
  rel.push_back({w({{'c', 1}, {'t', 2}}), w({{'c', 2}, {'t', 1}, {'t', 2}})});
  rel.push_back({w({{'t', 1}, {'c', 2}}), w({{'t', 1}, {'t', 2}, {'c', 1}})});
  rel.push_back({w({{'c', 2}, {'c', 1}, {'c', 2}}),
                 w({{'c', 1}, {'c', 2}, {'c', 1}}) +
                     scale(A * B, w({{'c', 2}}) + scale(RingElem(-1), w({{'c', 1}})) + w({{'t', 2}, {'c', 1}}) +
                                      scale(RingElem(-1), w({{'t', 1}, {'c', 2}})) + w({{'c', 1}, {'t', 2}}) +
                                      scale(RingElem(-1), w({{'c', 2}, {'t', 1}}))) +
                     scale(k.delta, w({{'t', 1}}) + scale(RingElem(-1), w({{'t', 2}})))});
  // probes: every word of length <= 3 in the generators
  std::vector<W> probes{{}};
  const W gens{{'t', 1}, {'t', 2}, {'c', 1}, {'c', 2}};
  for (std::size_t from = 0, len = 0; len < 3; ++len) {
    const std::size_t to = probes.size();
    for (std::size_t p = from; p < to; ++p)
      for (const auto& g : gens) {
        W x = probes[p];
        x.push_back(g);
        probes.push_back(x);
      }
    from = to;
  }
  REQUIRE(probes.size() == 85);
  SkeinEngine e;
  for (const auto& [l, r] : rel)
    for (const auto& p : probes) REQUIRE(trace(w(p) * l, &e) == trace(w(p) * r, &e));
}

TEST_CASE("property: Dubrovnik relation at a marked crossing") {
  kt::Rng rng(21);
  for (int i = 0; i < 40; ++i) {
    const BraidWord b = kt::random_braid(rng, 3, 6);
    if (b.letters.empty()) continue;
    const auto d = braid_to_link(b);
    const auto xs = crossing_nodes(d);
    const int x = xs[kt::uniform(rng, 0, static_cast<int>(xs.size()) - 1)];
    auto sw = d;
    kt::switch_crossing(sw, x);
    const RingElem lhs = link_value(d) - link_value(sw);
    const RingElem rhs =
        (A - B) * (link_value(resolve_one(d, x, Resolution::A)) - link_value(resolve_one(d, x, Resolution::B)));
    REQUIRE(lhs == rhs);
  }
}

TEST_CASE("property: kinks scale by a or a^-1") {
  kt::Rng rng(22);
  for (int i = 0; i < 40; ++i) {
    const auto d = braid_to_link(kt::random_braid(rng, 3, 5));
    auto hs = kt::standard_half_edges(d, false);
    if (hs.empty()) continue;
    const int h = hs[kt::uniform(rng, 0, static_cast<int>(hs.size()) - 1)];
    for (int s : {1, -1}) {
      auto k = d;
      kt::insert_kink(k, h, s);
      validate_link(k);
      REQUIRE(link_value(k) == RingElem::a(s) * link_value(d));
    }
  }
}

TEST_CASE("property: Reidemeister II and III on braids") {
  kt::Rng rng(23);
  for (int i = 0; i < 40; ++i) {
    const BraidWord b = kt::random_braid(rng, 4, 3, 3);
    const std::size_t at = kt::uniform(rng, 0, static_cast<int>(b.letters.size()));
    const int g = kt::uniform(rng, 1, b.strands - 2);
    const int s = kt::uniform(rng, 0, 1) ? 1 : -1;
    const RingElem v = braid_value(b);
    REQUIRE(braid_value(splice(b, at, {g, -g})) == v);
    REQUIRE(braid_value(splice(b, at, {-g, g})) == v);
    REQUIRE(braid_value(splice(b, at, {s * g, s * (g + 1), s * g})) ==
            braid_value(splice(b, at, {s * (g + 1), s * g, s * (g + 1)})));
  }
}

TEST_CASE("property: bracket agrees with the state sum and is a Markov invariant") {
  kt::Rng rng(24);
  for (int i = 0; i < 30; ++i) {
    BraidWord b = kt::random_braid(rng, 3, 5);
    const RingElem br = bracket(b);
    REQUIRE(br * RingElem::a(writhe(b)) == braid_value(b));
    if (!b.letters.empty()) {
      BraidWord c = b;
      std::rotate(c.letters.begin(), c.letters.begin() + 1, c.letters.end());
      REQUIRE(bracket(c) == br);
    }
    BraidWord st = b;
    ++st.strands;
    st.letters.push_back(kt::uniform(rng, 0, 1) ? b.strands : -b.strands);
    REQUIRE(bracket(st) == br);
  }
}

TEST_CASE("property: agreement with the crossing-switch oracle") {
  kt::Rng rng(25);
  kt::DubrovnikOracle oracle;
  for (int i = 0; i < 40; ++i) {
    const auto d = braid_to_link(kt::random_braid(rng, 4, 7));
    REQUIRE(link_value(d) == oracle.value(d));
  }
}

TEST_CASE("property: mirror law") {
  kt::Rng rng(26);
  for (int i = 0; i < 30; ++i) {
    const auto d = kt::random_regraph(rng, 4, 2);
    validate_regraph(d);
    REQUIRE(regraph_invariant(mirror(d)).value == regraph_invariant(d).value.mirrored());
  }
}

TEST_CASE("property: connected sum and disjoint union") {
  kt::Rng rng(27);
  const RingElem& al = constants().alpha;
  for (int i = 0; i < 30; ++i) {
    const auto g1 = kt::random_regraph(rng, 3, 2), g2 = kt::random_regraph(rng, 3, 2);
    const RingElem v1 = regraph_invariant(g1).value, v2 = regraph_invariant(g2).value;
    REQUIRE(regraph_invariant(disjoint_union(g1, g2)).value == al * v1 * v2);
    const auto h1 = kt::standard_half_edges(g1), h2 = kt::standard_half_edges(g2);
    const auto s = connected_sum(g1, h1[kt::uniform(rng, 0, static_cast<int>(h1.size()) - 1)], g2,
                                 h2[kt::uniform(rng, 0, static_cast<int>(h2.size()) - 1)]);
    REQUIRE(regraph_invariant(s).value == v1 * v2);
  }
}

TEST_CASE("property: threaded state sum is exact") {
  kt::Rng rng(28);
  for (int i = 0; i < 10; ++i) {
    const auto d = braid_to_link(kt::random_braid(rng, 3, 6));
    StateSumOptions o;
    o.threads = 4;
    REQUIRE(kauffman_state_sum(d, o).value == link_value(d));
  }
}

TEST_CASE("property: 4-valent state sum agrees") {
  CHECK(kauffman_via_4valent(circles(1)) == RingElem(1));
  CHECK(kauffman_via_4valent(braid_to_link(parse_braid("1 1"))) == hopf_value());
  kt::Rng rng(29);
  for (int i = 0; i < 30; ++i) {
    const auto d = braid_to_link(kt::random_braid(rng, 3, 6));
    REQUIRE(kauffman_via_4valent(d) == link_value(d));
  }
}

TEST_CASE("property: N=2 specialization of graph invariants") {
  kt::Rng rng(30);
  for (int i = 0; i < 30; ++i) {
    const auto g = kt::random_state_graph(rng, 12);
    REQUIRE(so_n(regraph_invariant(g), 2) == n2_closed_form(g));
  }
}
