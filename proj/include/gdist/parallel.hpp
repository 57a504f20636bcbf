#pragma once

namespace gdist {

/// Bounds the OpenMP team size used by the pair/source-parallel kernels.
/// Values < 1 restore the runtime default.
void set_num_threads(int threads);
int num_threads();

}  // namespace gdist
