#pragma once

#include <cstddef>
#include <exception>
#include <functional>

namespace gradedlc {

enum class Execution { serial, parallel };

struct ExecutionPolicy {
  Execution mode = Execution::parallel;
  int threads = 0;  // 0: GRADEDLC_THREADS if set, else the OpenMP default
};

/// Thread count the policy resolves to (1 for serial).
int resolved_threads(const ExecutionPolicy& policy);

/// Runs body(k) for k in [0, count). Under the parallel policy the iterations
/// are spread over OpenMP threads; the first exception thrown is rethrown here.
void for_each_index(std::size_t count, const ExecutionPolicy& policy, const std::function<void(std::size_t)>& body);

}  // namespace gradedlc
