#pragma once

// Planar 4-valent graphs obtained by contracting wide edges, with their own
// reduction rules. Shares only the coefficient ring and the map substrate
// with the trivalent engine.

#include <random>
#include <string>

#include "kauffman/diagram.hpp"
#include "kauffman/map.hpp"
#include "kauffman/ring.hpp"
#include "kauffman/skein.hpp"

namespace kauffman {

using Planar4Graph = CombinatorialMap;  // Flat nodes only

/// Contracts every wide edge u = (x,y,w), v = (w,z,t) to a vertex (x,y,z,t).
Planar4Graph collapse(const PlanarTrivalentGraph& g);
void validate_planar4(const Planar4Graph& h);

class FourValentEvaluator {
 public:
  explicit FourValentEvaluator(std::mt19937_64* rng = nullptr) : rng_(rng) {}
  RingElem evaluate(const Planar4Graph& h);
  std::size_t memo_size() const { return memo_.size(); }
  std::uint64_t fallback_runs() const { return fallbackRuns_; }

 private:
  RingElem connected(const Planar4Graph& h);
  RingElem reduce(const Planar4Graph& h);
  std::mt19937_64* rng_;
  MemoTable memo_;
  std::uint64_t fallbackRuns_ = 0;
};

/// Uses a process-wide evaluator.
RingElem evaluate4(const Planar4Graph& h);

/// Sum over A-, B- and vertex resolutions of every crossing.
RingElem kauffman_via_4valent(const LinkDiagram& d, FourValentEvaluator* ev = nullptr);

}  // namespace kauffman
