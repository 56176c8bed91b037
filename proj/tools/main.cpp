// kauffman: command-line front end.

#include <CLI11.hpp>
#include <atomic>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include "jobs.hpp"
#include "kauffman/errors.hpp"
#include "verify.hpp"

using namespace kcli;

namespace {

struct Common {
  JobSpec job;
  std::string format = "text";
  std::string cachePath;
  bool cacheVerify = false;
  int jobs = 1;
};

void add_job_flags(CLI::App* sub, Common& c) {
  sub->add_option("--so-n", c.job.soN, "specialize to SO(N): A=q, B=q^-1, a=q^(N-1)");
  sub->add_flag("--n2-fast", c.job.n2Fast, "closed form at N=2 (crossingless graphs)");
  sub->add_flag("--mirror", c.job.mirror, "mirror the diagram before evaluating");
  sub->add_flag("--normalized", c.job.normalized, "multiply by a^-writhe (braids)");
  sub->add_flag("--oracle-check", c.job.oracleCheck, "also compute through the 4-valent model and compare");
  sub->add_option("--max-crossings", c.job.maxCrossings, "refuse diagrams with more crossings")->capture_default_str();
  sub->add_option("--threads", c.job.threads, "state-sum threads (0 = all cores)")->capture_default_str();
  sub->add_option("--format", c.format, "text or json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  sub->add_option("--cache", c.cachePath, "JSON-lines evaluation cache");
  sub->add_flag("--cache-verify", c.cacheVerify, "recompute and compare instead of trusting cached values");
}

class CacheSession {
 public:
  CacheSession(const Common& c, kauffman::SkeinEngine& e) : c_(c), e_(e) {
    if (c.cachePath.empty()) return;
    try {
      cache_ = kauffman::EvalCache::load(c.cachePath);
      usable_ = true;
    } catch (const kauffman::Error& err) {
      std::cerr << "warning: " << err.what() << "; cache ignored\n";
      return;
    }
    if (!c.cacheVerify) cache_.seed(e.memo());
  }
  /// Cache handed to the jobs; none in verify mode.
  kauffman::EvalCache* for_jobs() { return usable_ && !c_.cacheVerify ? &cache_ : nullptr; }
  void check(const JobResult& r) {
    if (!usable_ || !c_.cacheVerify || !r.value || r.signature.empty()) return;
    const auto hit = cache_.lookup_diagram(r.signature);
    if (c_.job.normalized || !hit) return;
    if (!(*hit == *r.value))
      throw kauffman::Error(kauffman::ErrorKind::CacheCorrupt, "cached diagram value differs for " + r.job.text);
    ++checkedDiagrams_;
  }
  void finish() {
    if (!usable_) return;
    if (c_.cacheVerify) {
      const auto n = cache_.verify_against(e_.memo());
      std::cerr << "cache: " << n << " graph and " << checkedDiagrams_ << " diagram entries verified\n";
    }
    cache_.absorb(e_.memo());
    cache_.save(c_.cachePath);
  }

 private:
  const Common& c_;
  kauffman::SkeinEngine& e_;
  kauffman::EvalCache cache_;
  bool usable_ = false;
  std::size_t checkedDiagrams_ = 0;
};

std::string render(const JobResult& r, const std::string& format) {
  return format == "json" ? to_json(r).dump() : to_text(r);
}

int run_single(Common& c) {
  kauffman::SkeinEngine engine;
  CacheSession cache(c, engine);
  const JobResult r = run_job(c.job, engine, cache.for_jobs());
  cache.check(r);
  std::cout << render(r, c.format) << '\n';
  cache.finish();
  return 0;
}

int run_batch(Common& c, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw kauffman::Error(kauffman::ErrorKind::Parse, "cannot read " + path);
  std::vector<JobSpec> specs;
  std::string line;
  while (std::getline(in, line))
    if (auto j = parse_batch_line(line, c.job)) specs.push_back(*j);

  kauffman::SkeinEngine engine;
  CacheSession cache(c, engine);
  std::vector<std::string> out(specs.size());
  std::vector<int> code(specs.size(), 0);
  std::atomic<std::size_t> next{0};
  std::mutex checkMu;
  auto worker = [&] {
    for (std::size_t i; (i = next++) < specs.size();) {
      try {
        const JobResult r = run_job(specs[i], engine, cache.for_jobs());
        {
          std::lock_guard lock(checkMu);
          cache.check(r);
        }
        out[i] = render(r, c.format);
      } catch (const OracleMismatch& e) {
        out[i] = std::string("oracle mismatch: ") + e.what();
        code[i] = 2;
      } catch (const std::exception& e) {
        out[i] = c.format == "json" ? Json{{"input", specs[i].text}, {"error", e.what()}}.dump()
                                    : std::string("error: ") + e.what();
        code[i] = 1;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < std::max(1, c.jobs); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& s : out) std::cout << s << '\n';
  cache.finish();
  return code.empty() ? 0 : *std::max_element(code.begin(), code.end());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-variable Kauffman polynomial via planar trivalent graphs"};
  app.require_subcommand(1);
  Common c;
  std::string input, batchFile;
  std::uint64_t seed = 1;
  bool quick = false;

  auto* braid = app.add_subcommand("eval-braid", "evaluate the closure of a braid word");
  auto* pd = app.add_subcommand("eval-pd", "evaluate a PD code");
  auto* graph = app.add_subcommand("eval-graph", "evaluate an RE graph diagram");
  for (auto* s : {braid, pd, graph}) {
    s->add_option("input", input, "diagram text")->required();
    add_job_flags(s, c);
  }
  auto* batch = app.add_subcommand("batch", "evaluate one 'kind: input' job per line");
  batch->add_option("file", batchFile)->required()->check(CLI::ExistingFile);
  batch->add_option("--jobs", c.jobs, "jobs evaluated in parallel")->capture_default_str();
  add_job_flags(batch, c);
  auto* verify = app.add_subcommand("verify", "run the randomized self-check suites");
  verify->add_option("--seed", seed, "random seed for the generated inputs")->capture_default_str();
  verify->add_flag("--quick", quick, "smaller samples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (verify->parsed()) return run_verify(std::cout, seed, quick) ? 0 : 2;
    if (batch->parsed()) return run_batch(c, batchFile);
    c.job.text = input;
    c.job.kind = braid->parsed() ? InputKind::Braid : pd->parsed() ? InputKind::Pd : InputKind::Graph;
    return run_single(c);
  } catch (const OracleMismatch& e) {
    std::cerr << "oracle mismatch:\n" << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
