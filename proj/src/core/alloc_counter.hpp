#pragma once

#include <cstdint>

namespace fws {

// Process-wide allocation instrumentation. The library replaces the global
// operator new/delete; every heap allocation bumps these counters. Used to
// verify that steady-state query execution performs zero allocations.
struct AllocCounters {
  std::int64_t count = 0;
  std::int64_t bytes = 0;
};

AllocCounters alloc_counters();

}  // namespace fws
