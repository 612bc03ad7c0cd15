#pragma once

namespace qalogic {

/// Execution policy for the data-parallel kernels. `serial` runs the plain
/// reference loop, `parallel` the OpenMP version. Both perform the same
/// per-element arithmetic in the same order, so results are bit-identical.
enum class Exec { serial, parallel };

}  // namespace qalogic
