#pragma once

namespace preper {

// Thread budget for OpenMP kernels: PREPER_THREADS if set and positive,
// otherwise the OpenMP default.
int thread_count();

}  // namespace preper
