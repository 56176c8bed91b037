#include "verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <string>

#include "dubrovnik.hpp"
#include "generators.hpp"
#include "kauffman/fourvalent.hpp"
#include "kauffman/invariants.hpp"

namespace kcli {

using namespace kauffman;

namespace {

struct Suite {
  std::string name;
  std::function<void(kt::Rng&, int scale, int& checks, int& failures)> body;
};

void expect(bool ok, int& checks, int& failures) {
  ++checks;
  if (!ok) ++failures;
}

RingElem closure_value(const BraidWord& b, SkeinEngine& e) {
  StateSumOptions o;
  o.engine = &e;
  return braid_state_sum(b, o).value;
}

const std::vector<Suite>& suites() {
  static const std::vector<Suite> all = {
      {"ring identities",
       [](kt::Rng&, int, int& c, int& f) {
         const auto& k = constants();
         const RingElem A = RingElem::A(), B = RingElem::B(), a = RingElem::a();
         expect((A * k.alpha + B + k.beta - a).is_zero(), c, f);
         expect((A * RingElem::a(-1) + B * B + B * k.beta + k.gamma).is_zero(), c, f);
         expect((A * A + B * B + (A + B) * k.beta + A * B * k.alpha + k.gamma).is_zero(), c, f);
         expect((A * B * k.beta + (A + B) * k.gamma - k.delta).is_zero(), c, f);
       }},
      {"Reidemeister and Markov",
       [](kt::Rng& rng, int scale, int& c, int& f) {
         SkeinEngine e;
         for (int i = 0; i < 10 * scale; ++i) {
           BraidWord b = kt::random_braid(rng, 4, 4, 3);
           const RingElem br = bracket(b, &e);
           const int g = kt::uniform(rng, 1, b.strands - 2);
           const auto at = b.letters.begin() + kt::uniform(rng, 0, static_cast<int>(b.letters.size()));
           BraidWord r2 = b, r3a = b, r3b = b;
           r2.letters.insert(r2.letters.begin() + (at - b.letters.begin()), {g, -g});
           r3a.letters.insert(r3a.letters.begin() + (at - b.letters.begin()), {g, g + 1, g});
           r3b.letters.insert(r3b.letters.begin() + (at - b.letters.begin()), {g + 1, g, g + 1});
           expect(bracket(r2, &e) == br, c, f);
           expect(bracket(r3a, &e) == bracket(r3b, &e), c, f);
           BraidWord conj = b;
           if (!conj.letters.empty())
             std::rotate(conj.letters.begin(), conj.letters.begin() + 1, conj.letters.end());
           expect(bracket(conj, &e) == br, c, f);
           BraidWord st = b;
           ++st.strands;
           st.letters.push_back(kt::uniform(rng, 0, 1) ? b.strands : -b.strands);
           expect(bracket(st, &e) == br, c, f);
         }
       }},
      {"confluence",
       [](kt::Rng& rng, int scale, int& c, int& f) {
         for (int i = 0; i < 20 * scale; ++i) {
           const auto g = i % 10 == 0 ? kt::octahedral_state(rng) : kt::random_state_graph(rng, 12);
           const RingElem v = SkeinEngine().evaluate(g);
           for (int s = 0; s < 5; ++s) {
             std::mt19937_64 r(rng());
             SkeinEngine e(EvalOptions{&r, nullptr, true});
             expect(e.evaluate(g) == v, c, f);
           }
         }
       }},
      {"mirror and product laws",
       [](kt::Rng& rng, int scale, int& c, int& f) {
         const RingElem& al = constants().alpha;
         for (int i = 0; i < 5 * scale; ++i) {
           const auto g1 = kt::random_regraph(rng, 3, 2), g2 = kt::random_regraph(rng, 3, 2);
           const RingElem v1 = regraph_invariant(g1).value, v2 = regraph_invariant(g2).value;
           expect(regraph_invariant(mirror(g1)).value == v1.mirrored(), c, f);
           expect(regraph_invariant(disjoint_union(g1, g2)).value == al * v1 * v2, c, f);
           const auto h1 = kt::standard_half_edges(g1), h2 = kt::standard_half_edges(g2);
           const auto s = connected_sum(g1, h1[kt::uniform(rng, 0, static_cast<int>(h1.size()) - 1)], g2,
                                        h2[kt::uniform(rng, 0, static_cast<int>(h2.size()) - 1)]);
           expect(regraph_invariant(s).value == v1 * v2, c, f);
         }
       }},
      {"N=2 closed form",
       [](kt::Rng& rng, int scale, int& c, int& f) {
         for (int i = 0; i < 20 * scale; ++i) {
           const auto g = kt::random_state_graph(rng, 12);
           expect(specialize_soN(evaluate(g), 2) == n2_closed_form(g), c, f);
         }
         for (int i = 0; i < scale; ++i)
           expect(so_n(regraph_invariant(kt::equal_components_crossing(rng, 8)), 2).is_zero(), c, f);
       }},
      {"oracle cross-checks",
       [](kt::Rng& rng, int scale, int& c, int& f) {
         kt::DubrovnikOracle oracle;
         SkeinEngine e;
         for (int i = 0; i < 5 * scale; ++i) {
           const BraidWord b = kt::random_braid(rng, 3, 6);
           const auto d = braid_to_link(b);
           const RingElem v = closure_value(b, e);
           expect(v == oracle.value(d), c, f);
           expect(v == kauffman_via_4valent(d), c, f);
           const auto g = kt::random_state_graph(rng, 10);
           expect(evaluate4(collapse(g)) == evaluate(g), c, f);
         }
       }},
  };
  return all;
}

}  // namespace

bool run_verify(std::ostream& out, std::uint64_t seed, bool quick) {
  bool ok = true;
  const int scale = quick ? 1 : 4;
  for (const auto& s : suites()) {
    kt::Rng rng(seed);
    int checks = 0, failures = 0;
    const auto t0 = std::chrono::steady_clock::now();
    std::string error;
    try {
      s.body(rng, scale, checks, failures);
    } catch (const std::exception& e) {
      error = e.what();
      ++failures;
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    ok &= failures == 0;
    out << (failures == 0 ? "PASS " : "FAIL ") << s.name << " (" << checks << " checks, " << failures
        << " failures, " << static_cast<long long>(ms) << " ms)";
    if (!error.empty()) out << ": " << error;
    out << '\n';
  }
  return ok;
}

}  // namespace kcli
