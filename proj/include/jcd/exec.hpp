#pragma once

namespace jcd {

/// Execution policy for grid kernels: a serial reference loop or the
/// OpenMP-parallel loop. Both produce bitwise-identical results.
enum class Exec { serial, parallel };

}  // namespace jcd
