#pragma once

#include <mutex>
#include <optional>
#include <string>

#include <json.hpp>

#include "kauffman/cache.hpp"
#include "kauffman/invariants.hpp"

namespace kcli {

using kauffman::RingElem;
using Json = nlohmann::ordered_json;

enum class InputKind { Braid, Pd, Graph };

struct JobSpec {
  InputKind kind = InputKind::Braid;
  std::string text;
  std::optional<int> soN;
  bool n2Fast = false;
  bool mirror = false;
  bool normalized = false;
  bool oracleCheck = false;
  int maxCrossings = 14;
  int threads = 1;
};

struct JobResult {
  JobSpec job;
  std::optional<RingElem> value;  // absent for the N=2 shortcut
  std::optional<int> writhe;
  std::optional<kauffman::QPoly> specialized;
  std::uint64_t statesEvaluated = 0;
  kauffman::Source source = kauffman::Source::StateSum;
  double elapsedMs = 0;
  std::optional<RingElem> oracle;  // second path, when requested
  std::string oracleName;
  std::string signature;  // of the evaluated (possibly mirrored) diagram
};

/// Raised when the two paths of an oracle check disagree.
struct OracleMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Runs one job against `engine` (whose memo may be cache-seeded). With a
/// cache, whole-diagram results are looked up and stored there too.
JobResult run_job(const JobSpec& job, kauffman::SkeinEngine& engine, kauffman::EvalCache* cache = nullptr);

Json value_to_json(const RingElem& v);
RingElem value_from_json(const Json& j);

Json to_json(const JobResult& r, bool withTime = true);
std::string to_text(const JobResult& r);

/// "braid: 1 1", "pd: X(...)" or "graph: W(...)"; blank lines and '#'
/// comments are skipped. Throws ParseError otherwise.
std::optional<JobSpec> parse_batch_line(const std::string& line, const JobSpec& defaults);

}  // namespace kcli
