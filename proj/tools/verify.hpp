#pragma once

#include <cstdint>
#include <ostream>

namespace kcli {

/// Runs the randomized self-check suites, printing one line per suite.
/// Returns true when every suite passes.
bool run_verify(std::ostream& out, std::uint64_t seed, bool quick);

}  // namespace kcli
