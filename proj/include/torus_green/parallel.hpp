// parallel.hpp
// Thread-count policy for the OpenMP kernels.

#pragma once

namespace tg {

/// Threads to use: the TORUS_GREEN_THREADS environment variable when set to a
/// positive integer, otherwise the OpenMP default. 0 means auto.
int configured_threads();

/// Overrides the environment for the rest of the process; 0 restores auto.
void set_thread_override(int n);

}  // namespace tg
