#pragma once

#include <cstddef>
#include <exception>

#include "casimir/execution.hpp"

namespace casimir {

// Runs body(i) for i in [0, n). Under Execution::Parallel the iterations are
// split statically across OpenMP threads; the first exception thrown by any
// iteration is rethrown on the calling thread once the loop has finished.
template <class Body>
void parallel_for(std::ptrdiff_t n, Execution exec, Body&& body) {
  if (exec == Execution::Serial) {
    for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
#pragma omp critical(casimir_parallel_for)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace casimir
