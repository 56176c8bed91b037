#include "jobs.hpp"

#include <chrono>

#include "kauffman/errors.hpp"
#include "kauffman/fourvalent.hpp"

namespace kcli {

using namespace kauffman;

namespace {

RingElem graph_via_4valent(const CombinatorialMap& d) {
  FourValentEvaluator ev;
  RingAccumulator acc;
  for_each_state(d, [&](const StateRecord& s) {
    acc.add_scaled(LaurentPoly::monomial({s.na, s.nb, 0}), ev.evaluate(collapse(s.graph)));
  });
  return acc.result();
}

std::mutex cacheMu;

}  // namespace

JobResult run_job(const JobSpec& job, SkeinEngine& engine, EvalCache* cache) {
  const auto t0 = std::chrono::steady_clock::now();
  JobResult r;
  r.job = job;

  CombinatorialMap d;
  switch (job.kind) {
    case InputKind::Braid: {
      const BraidWord b = parse_braid(job.text);
      d = braid_to_link(b);
      r.writhe = writhe(b);
      break;
    }
    case InputKind::Pd: d = parse_pd(job.text); break;
    case InputKind::Graph: d = parse_regraph(job.text); break;
  }
  const int crossings = d.count(NodeKind::Crossing);
  if (crossings > job.maxCrossings)
    throw Error(ErrorKind::CeilingExceeded, std::to_string(crossings) + " crossings exceed the ceiling of " +
                                                std::to_string(job.maxCrossings));
  if (job.normalized && !r.writhe) throw Error(ErrorKind::MissingWrithe, "normalization needs a braid input");
  if (job.n2Fast && (job.kind != InputKind::Graph || crossings > 0))
    throw Error(ErrorKind::Range, "the N=2 shortcut needs a graph without crossings");
  if (job.soN && *job.soN < 2) throw Error(ErrorKind::Range, "N must be at least 2");

  if (job.mirror) {
    d = mirror(d);
    if (r.writhe) r.writhe = -*r.writhe;
  }

  if (job.n2Fast) {
    r.specialized = n2_closed_form(d);
    r.source = Source::N2Closed;
    if (job.oracleCheck) {
      r.oracle = engine.evaluate(d);
      r.oracleName = "skein";
      if (!(specialize_soN(*r.oracle, 2) == *r.specialized))
        throw OracleMismatch("closed form: " + r.specialized->to_text() +
                             "\nskein: " + specialize_soN(*r.oracle, 2).to_text());
    }
  } else {
    StateSumOptions o;
    o.engine = &engine;
    o.threads = job.threads;
    const std::string sig = canonical_signature(d);
    r.signature = sig;
    std::optional<RingElem> hit;
    if (cache) {
      std::lock_guard lock(cacheMu);
      hit = cache->lookup_diagram(sig);
    }
    InvariantResult ir;
    if (hit) {
      if (job.kind == InputKind::Graph) validate_regraph(d);
      ir.value = *hit;
      ir.statesEvaluated = 1;
      for (int i = 0; i < crossings; ++i) ir.statesEvaluated *= 3;
    } else {
      ir = job.kind == InputKind::Graph ? regraph_invariant(d, o) : kauffman_state_sum(d, o);
      if (cache) {
        std::lock_guard lock(cacheMu);
        cache->store_diagram(sig, ir.value);
      }
    }
    r.statesEvaluated = ir.statesEvaluated;
    r.source = ir.source;
    if (job.oracleCheck) {
      r.oracle = job.kind == InputKind::Graph ? graph_via_4valent(d) : kauffman_via_4valent(d);
      r.oracleName = to_string(Source::FourValent);
      if (!(*r.oracle == ir.value))
        throw OracleMismatch("stateSum: " + ir.value.to_text() + "\nfourValent: " + r.oracle->to_text());
    }
    ir.writhe = r.writhe;
    r.value = job.normalized ? normalized(ir) : ir.value;
    if (job.soN) r.specialized = specialize_soN(*r.value, *job.soN);
  }
  r.elapsedMs = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

Json value_to_json(const RingElem& v) {
  Json terms = Json::array();
  const auto& ts = v.num().terms();
  for (auto it = ts.rbegin(); it != ts.rend(); ++it) {
    Json c;
    if (it->coeff >= std::numeric_limits<long long>::min() && it->coeff <= std::numeric_limits<long long>::max())
      c = it->coeff.convert_to<long long>();
    else
      c = it->coeff.str();
    terms.push_back({{"coeff", c}, {"expa", it->mono.expa}, {"expA", it->mono.expA}, {"expB", it->mono.expB}});
  }
  return {{"terms", terms}, {"denomPow", v.dpow()}};
}

RingElem value_from_json(const Json& j) {
  LaurentBuilder b;
  for (const auto& t : j.at("terms")) {
    const auto& c = t.at("coeff");
    const BigInt k = c.is_string() ? BigInt(c.get<std::string>()) : BigInt(c.get<long long>());
    b.add({t.at("expA").get<int>(), t.at("expB").get<int>(), t.at("expa").get<int>()}, k);
  }
  return RingElem::normalize(b.build(), j.at("denomPow").get<int>());
}

Json to_json(const JobResult& r, bool withTime) {
  Json j;
  j["input"] = r.job.text;
  if (r.writhe) j["writhe"] = *r.writhe;
  if (r.value) j["value"] = value_to_json(*r.value);
  if (r.specialized) j["specialized"] = r.specialized->to_text();
  j["statesEvaluated"] = r.statesEvaluated;
  j["source"] = to_string(r.source);
  if (r.oracle) j["oracle"] = {{"path", r.oracleName}, {"agrees", true}};
  if (withTime) j["elapsedMs"] = r.elapsedMs;
  return j;
}

std::string to_text(const JobResult& r) {
  std::string s = r.specialized ? r.specialized->to_text() : r.value->to_text();
  if (r.oracle) s += "\noracle " + r.oracleName + ": agrees";
  return s;
}

std::optional<JobSpec> parse_batch_line(const std::string& line, const JobSpec& defaults) {
  const auto first = line.find_first_not_of(" \t\r");
  if (first == std::string::npos || line[first] == '#') return std::nullopt;
  const auto colon = line.find(':', first);
  if (colon == std::string::npos) throw Error(ErrorKind::Parse, "batch line needs 'kind: input': " + line);
  std::string kind = line.substr(first, colon - first);
  while (!kind.empty() && kind.back() == ' ') kind.pop_back();
  JobSpec j = defaults;
  if (kind == "braid")
    j.kind = InputKind::Braid;
  else if (kind == "pd")
    j.kind = InputKind::Pd;
  else if (kind == "graph")
    j.kind = InputKind::Graph;
  else
    throw Error(ErrorKind::Parse, "unknown input kind '" + kind + "'");
  j.text = line.substr(colon + 1);
  const auto a = j.text.find_first_not_of(" \t"), b = j.text.find_last_not_of(" \t\r");
  j.text = a == std::string::npos ? "" : j.text.substr(a, b - a + 1);
  return j;
}

}  // namespace kcli
