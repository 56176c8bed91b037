#include "kauffman/invariants.hpp"

#include <array>
#include <cstdlib>
#include <functional>
#include <thread>
#include <unordered_map>

#include "kauffman/errors.hpp"

namespace kauffman {

const char* to_string(Source s) {
  switch (s) {
    case Source::StateSum: return "stateSum";
    case Source::Bracket: return "bracket";
    case Source::FourValent: return "fourValent";
    case Source::N2Closed: return "n2Closed";
  }
  return "?";
}

namespace {

InvariantResult state_sum(const CombinatorialMap& d, const StateSumOptions& o) {
  SkeinEngine& eng = o.engine ? *o.engine : default_engine();
  const auto xs = crossing_nodes(d);
  const int c = static_cast<int>(xs.size());
  std::uint64_t total = 1;
  for (int i = 0; i < c; ++i) total *= 3;

  int threads = o.threads == 0 ? static_cast<int>(std::thread::hardware_concurrency()) : o.threads;
  threads = std::max(1, std::min<int>(threads, static_cast<int>(total / 64) + 1));

  // States are grouped by the isomorphism class of their graph; each class
  // is evaluated once against the sum of its A^na B^nb weights.
  struct Class {
    PlanarTrivalentGraph graph;
    LaurentBuilder weight;
  };
  using Classes = std::unordered_map<std::string, Class>;
  auto run = [&](std::uint64_t begin, std::uint64_t step, Classes& out) {
    std::vector<Resolution> choice(c);
    for (std::uint64_t s = begin; s < total; s += step) {
      std::uint64_t r = s;
      for (int i = c - 1; i >= 0; --i) {
        choice[i] = static_cast<Resolution>(r % 3);
        r /= 3;
      }
      StateRecord st = resolve(d, choice);
      auto [it, fresh] = out.try_emplace(canonical_signature(st.graph));
      if (fresh) it->second.graph = std::move(st.graph);
      it->second.weight.add(Monomial{st.na, st.nb, 0}, 1);
    }
  };

  std::vector<Classes> parts(threads);
  if (threads == 1) {
    run(0, 1, parts[0]);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errs(threads);
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        try {
          run(t, threads, parts[t]);
        } catch (...) {
          errs[t] = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    for (auto& e : errs)
      if (e) std::rethrow_exception(e);
    for (int t = 1; t < threads; ++t)
      for (auto& [sig, cl] : parts[t]) {
        auto [it, fresh] = parts[0].try_emplace(sig);
        if (fresh) it->second.graph = std::move(cl.graph);
        it->second.weight.add(cl.weight.build());
      }
  }
  RingAccumulator acc;
  for (auto& [sig, cl] : parts[0]) {
    const RingElem v = eng.evaluate(cl.graph);
    if (!v.is_zero()) acc.add_scaled(cl.weight.build(), v);
  }
  InvariantResult res;
  res.value = acc.result();
  res.statesEvaluated = total;
  res.source = Source::StateSum;
  return res;
}

}  // namespace

InvariantResult kauffman_state_sum(const LinkDiagram& d, const StateSumOptions& o) {
  validate_link(d);
  return state_sum(d, o);
}

InvariantResult regraph_invariant(const REGraphDiagram& d, const StateSumOptions& o) {
  validate_regraph(d);
  return state_sum(d, o);
}

InvariantResult braid_state_sum(const BraidWord& b, const StateSumOptions& o) {
  InvariantResult r = kauffman_state_sum(braid_to_link(b), o);
  r.writhe = writhe(b);
  return r;
}

RingElem normalized(const InvariantResult& r) {
  if (!r.writhe) throw Error(ErrorKind::MissingWrithe, "normalization needs a braid input");
  return RingElem::a(-*r.writhe) * r.value;
}

TangleCombo rho_expand(const BraidWord& b) {
  const int n = b.strands;
  TangleCombo cur;
  cur.terms.emplace_back(RingElem(1), identity_tangle(n));
  for (int l : b.letters) {
    const int i = std::abs(l);
    if (l == 0 || i >= n) throw Error(ErrorKind::Range, "braid letter out of range");
    const Tangle one = identity_tangle(n), t = t_tangle(n, i), c = c_tangle(n, i);
    const std::pair<RingElem, const Tangle*> parts[3] = {
        {l > 0 ? RingElem::A() : RingElem::B(), &one},
        {l > 0 ? RingElem::B() : RingElem::A(), &t},
        {RingElem(1), &c}};
    TangleCombo next;
    next.terms.reserve(cur.terms.size() * 3);
    for (const auto& [k, x] : cur.terms)
      for (const auto& [k2, y] : parts) next.terms.emplace_back(k * k2, stack(x, *y));
    cur = std::move(next);
  }
  return cur;
}

RingElem trace(const TangleCombo& x, SkeinEngine* engine) {
  SkeinEngine& eng = engine ? *engine : default_engine();
  // coefficients of terms with isomorphic closures are summed first
  struct Class {
    PlanarTrivalentGraph graph;
    RingAccumulator coeff;
  };
  std::unordered_map<std::string, Class> classes;
  for (const auto& [k, t] : x.terms) {
    if (t.n != x.terms.front().second.n)
      throw Error(ErrorKind::MixedArity, "trace of tangles with different arity");
    PlanarTrivalentGraph g = close_tangle(t);
    auto [it, fresh] = classes.try_emplace(canonical_signature(g));
    if (fresh) it->second.graph = std::move(g);
    it->second.coeff.add(k);
  }
  RingAccumulator acc;
  for (auto& [sig, cl] : classes) {
    const RingElem c = cl.coeff.result();
    if (!c.is_zero()) acc.add(c * eng.evaluate(cl.graph));
  }
  return acc.result();
}

RingElem bracket(const BraidWord& b, SkeinEngine* engine) {
  // tr(rho(b)) letter by letter, merging isomorphic partial products (the
  // boundary points are labelled, so the signature respects them)
  SkeinEngine& eng = engine ? *engine : default_engine();
  const int n = b.strands;
  struct Class {
    Tangle t;
    LaurentBuilder weight;
  };
  using Level = std::unordered_map<std::string, Class>;
  auto put = [](Level& lv, Tangle t, const LaurentPoly& w) {
    auto [it, fresh] = lv.try_emplace(canonical_signature(t.map));
    if (fresh) it->second.t = std::move(t);
    it->second.weight.add(w);
  };
  Level cur;
  put(cur, identity_tangle(n), LaurentPoly(1));
  for (int l : b.letters) {
    const int i = std::abs(l);
    if (l == 0 || i >= n) throw Error(ErrorKind::Range, "braid letter out of range");
    const LaurentPoly one = l > 0 ? LaurentPoly::var_A() : LaurentPoly::var_B();
    const LaurentPoly tw = l > 0 ? LaurentPoly::var_B() : LaurentPoly::var_A();
    const Tangle t = t_tangle(n, i), c = c_tangle(n, i);
    Level next;
    for (auto& [sig, cl] : cur) {
      const LaurentPoly w = cl.weight.build();
      put(next, stack(cl.t, t), tw * w);
      put(next, stack(cl.t, c), w);
      put(next, std::move(cl.t), one * w);
    }
    cur = std::move(next);
  }
  std::unordered_map<std::string, std::pair<PlanarTrivalentGraph, LaurentBuilder>> closed;
  for (auto& [sig, cl] : cur) {
    PlanarTrivalentGraph g = close_tangle(cl.t);
    auto [it, fresh] = closed.try_emplace(canonical_signature(g));
    if (fresh) it->second.first = std::move(g);
    it->second.second.add(cl.weight.build());
  }
  RingAccumulator acc;
  for (auto& [sig, cl] : closed) {
    const RingElem v = eng.evaluate(cl.first);
    if (!v.is_zero()) acc.add_scaled(cl.second.build(), v);
  }
  return RingElem::a(-writhe(b)) * acc.result();
}

QPoly so_n(const InvariantResult& r, int N) {
  if (N < 2) throw Error(ErrorKind::Range, "SO(N) needs N >= 2");
  return specialize_soN(r.value, N);
}

QPoly n2_closed_form(const PlanarTrivalentGraph& g) {
  std::vector<int> comp;
  const int c = g.components(comp) + g.freeLoops;
  const int n = g.count(NodeKind::Trivalent);
  if (n % 2 != 0) throw Error(ErrorKind::OddVertexCount, "odd vertex count");
  if (c == 0) return QPoly(1);
  return pow(QPoly(2), c - 1) * pow(-QPoly::q(1) - QPoly::q(-1), n / 2);
}

}  // namespace kauffman
