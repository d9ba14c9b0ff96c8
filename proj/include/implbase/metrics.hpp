#pragma once

#include <cstdint>
#include <string>

namespace implbase {

/// Per-call instrumentation counters. Tick placement mirrors the `deps`,
/// `inner loop` and `outer loop` markers of each closure routine.
struct Metrics {
  std::uint64_t deps = 0;
  std::uint64_t attribute_ops = 0;
  std::uint64_t inner_loops = 0;
  std::uint64_t outer_loops = 0;
  std::uint64_t elapsed_ns = 0;

  Metrics& operator+=(const Metrics& other) {
    deps += other.deps;
    attribute_ops += other.attribute_ops;
    inner_loops += other.inner_loops;
    outer_loops += other.outer_loops;
    elapsed_ns += other.elapsed_ns;
    return *this;
  }

  /// Equality over the deterministic counters only; elapsed time is ignored.
  bool same_counters(const Metrics& other) const {
    return deps == other.deps && attribute_ops == other.attribute_ops &&
           inner_loops == other.inner_loops && outer_loops == other.outer_loops;
  }
};

/// `deps=… attrib=… inner=… outer=… time_ns=…`
std::string format_metrics(const Metrics& m);

}  // namespace implbase
