#pragma once

namespace ssf {

// Selects between the OpenMP kernel and the serial reference path. Both are
// required to produce identical results.
enum class Execution { serial, parallel };

// Number of threads the parallel kernels will use (1 when built without OpenMP).
int max_threads();

}  // namespace ssf
