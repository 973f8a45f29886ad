#include "gradedlc/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <mutex>
#include <string>

namespace gradedlc {

int resolved_threads(const ExecutionPolicy& policy) {
  if (policy.mode == Execution::serial) return 1;
  if (policy.threads > 0) return policy.threads;
  if (const char* env = std::getenv("GRADEDLC_THREADS")) {
    try {
      int t = std::stoi(env);
      if (t > 0) return t;
    } catch (const std::exception&) {
    }
  }
  return omp_get_max_threads();
}

void for_each_index(std::size_t count, const ExecutionPolicy& policy, const std::function<void(std::size_t)>& body) {
  const int threads = resolved_threads(policy);
  if (threads <= 1 || count <= 1) {
    for (std::size_t k = 0; k < count; ++k) body(k);
    return;
  }
  std::exception_ptr failure;
  std::mutex guard;
  const auto total = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (long long k = 0; k < total; ++k) {
    {
      std::lock_guard<std::mutex> lock(guard);
      if (failure) continue;
    }
    try {
      body(static_cast<std::size_t>(k));
    } catch (...) {
      std::lock_guard<std::mutex> lock(guard);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace gradedlc
