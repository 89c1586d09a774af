#pragma once

namespace spinrotor {

// Grid kernels come in an OpenMP version and a serial reference. Both write
// per-point results into fixed slots, so output does not depend on the
// thread count.
enum class Execution { serial, parallel };

}  // namespace spinrotor
