#pragma once

// State sums, the braid bracket and specializations.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "kauffman/diagram.hpp"
#include "kauffman/ring.hpp"
#include "kauffman/skein.hpp"

namespace kauffman {

enum class Source : std::uint8_t { StateSum, Bracket, FourValent, N2Closed };
const char* to_string(Source s);

struct InvariantResult {
  RingElem value;
  std::optional<int> writhe;
  std::uint64_t statesEvaluated = 0;
  Source source = Source::StateSum;
};

struct StateSumOptions {
  SkeinEngine* engine = nullptr;  // default_engine() when null
  int threads = 1;                // 0 = hardware concurrency
};

/// Sum over the 3^c states of A^na B^nb P(state).
InvariantResult kauffman_state_sum(const LinkDiagram& d, const StateSumOptions& o = {});
/// Same sum for RE graph diagrams (crossings on standard edges only).
InvariantResult regraph_invariant(const REGraphDiagram& d, const StateSumOptions& o = {});
/// State sum of the closure, with the braid writhe attached.
InvariantResult braid_state_sum(const BraidWord& b, const StateSumOptions& o = {});

/// a^-writhe * value; MissingWrithe without a writhe.
RingElem normalized(const InvariantResult& r);

struct TangleCombo {
  std::vector<std::pair<RingElem, Tangle>> terms;
};

/// rho(sigma_i) = A 1 + B t_i + c_i, rho(sigma_i^-1) = A t_i + B 1 + c_i,
/// multiplied out letter by letter (first letter on top).
TangleCombo rho_expand(const BraidWord& b);
/// Sum of coeff * P(closure); MixedArity if the arities differ.
RingElem trace(const TangleCombo& x, SkeinEngine* engine = nullptr);
/// a^-w(b) tr(rho(b)).
RingElem bracket(const BraidWord& b, SkeinEngine* engine = nullptr);

/// A = q, B = q^-1, a = q^(N-1).
QPoly so_n(const InvariantResult& r, int N);
/// 2^(c-1) (-q - q^-1)^(n/2), c counting free loops.
QPoly n2_closed_form(const PlanarTrivalentGraph& g);

}  // namespace kauffman
