#pragma once

// Evaluation of planar trivalent graphs by the graph skein relations.

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kauffman/diagram.hpp"
#include "kauffman/ring.hpp"

namespace kauffman {

struct LinearCombo {
  std::vector<std::pair<RingElem, PlanarTrivalentGraph>> terms;
  void add(RingElem c, PlanarTrivalentGraph g) {
    if (!c.is_zero()) terms.emplace_back(std::move(c), std::move(g));
  }
};

enum class ConfigTag : std::uint8_t { None, Circle, Lollipop, WideDigon, Triangle, Square };

/// A reducible configuration. `h` is a half-edge on the face (or the loop
/// half-edge for a lollipop); `variant` distinguishes the rotational forms.
struct LocalConfig {
  ConfigTag tag = ConfigTag::None;
  int h = -1;
  int variant = 0;
};

const char* to_string(ConfigTag t);

/// Configurations ordered by the fixed rule priority; the first is what
/// find_local_config returns.
LocalConfig find_local_config(const PlanarTrivalentGraph& g);
std::vector<LocalConfig> all_local_configs(const PlanarTrivalentGraph& g);

/// Removes one free loop. If g is a single circle the value is 1 and the
/// returned graph is empty with factor 1.
std::pair<RingElem, PlanarTrivalentGraph> apply_circle(const PlanarTrivalentGraph& g);
std::pair<RingElem, PlanarTrivalentGraph> apply_lollipop(const PlanarTrivalentGraph& g,
                                                         const LocalConfig& c);
/// Standard digon between two wide edges (already normalized).
LinearCombo apply_wide_digon(const PlanarTrivalentGraph& g, const LocalConfig& c);
/// Rotates the wide edge containing half-edge `wide` (H <-> I).
PlanarTrivalentGraph h_rotate(const PlanarTrivalentGraph& g, int wide);
/// Triangle flip: `h` is a standard half-edge on a face bounded by three
/// standard edges whose vertices all carry outward wide edges. The first
/// term is the flipped triangle with coefficient 1.
LinearCombo square_move(const PlanarTrivalentGraph& g, int h);

/// Brings a reducible face to a standard digon by rotations; returns the
/// rotated graph and a half-edge on the digon.
std::pair<PlanarTrivalentGraph, int> normalize_to_digon(const PlanarTrivalentGraph& g,
                                                        const LocalConfig& c);

struct Move {
  enum Kind : std::uint8_t { Rotate, Flip } kind;
  int h;  // half-edge argument in the graph the move applies to
};

/// Moves (rotations and triangle flips, following the flipped term) that
/// turn g into a graph with a reducible configuration. Throws Internal if
/// the search space is exhausted.
std::vector<Move> alternating_walk_reduce(const PlanarTrivalentGraph& g);

struct EvalOptions {
  /// When set, rule choice and face choice are randomized (all choices are
  /// valid); used by the confluence tests.
  std::mt19937_64* rng = nullptr;
  /// Collects a JSON array of applied rules.
  std::vector<std::string>* trace = nullptr;
  /// Check, on each memo collision, that the stored value agrees.
  bool checkMemo = true;
};

/// Memo table: signature -> value. Thread-safe; a collision with a
/// different value throws Internal.
class MemoTable {
 public:
  std::optional<RingElem> find(const std::string& sig) const;
  void insert(const std::string& sig, const RingElem& v, bool check);
  std::size_t size() const;
  void clear();
  std::vector<std::pair<std::string, RingElem>> entries() const;

 private:
  mutable std::mutex mu_;
  std::unordered_map<std::string, RingElem> map_;
};

class SkeinEngine {
 public:
  SkeinEngine() = default;
  explicit SkeinEngine(EvalOptions opts) : opts_(opts) {}

  RingElem evaluate(const PlanarTrivalentGraph& g);
  RingElem evaluate(const LinearCombo& x);

  MemoTable& memo() { return memo_; }
  std::uint64_t fallback_runs() const { return fallbackRuns_; }
  void set_options(EvalOptions o) { opts_ = o; }

 private:
  RingElem eval_connected(const PlanarTrivalentGraph& g);
  RingElem reduce(const PlanarTrivalentGraph& g);
  void note(const std::string& s);

  EvalOptions opts_;
  MemoTable memo_;
  std::atomic<std::uint64_t> fallbackRuns_{0};
};

/// Uses a process-wide engine.
RingElem evaluate(const PlanarTrivalentGraph& g);
SkeinEngine& default_engine();

/// Rotation-invariant key (the signature of the wide-edge collapse).
std::string flat_key(const PlanarTrivalentGraph& g);

}  // namespace kauffman
