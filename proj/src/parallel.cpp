#include "gdist/parallel.hpp"

#include <omp.h>

namespace gdist {

namespace {
int default_threads = omp_get_max_threads();
}

void set_num_threads(int threads) { omp_set_num_threads(threads < 1 ? default_threads : threads); }

int num_threads() { return omp_get_max_threads(); }

}  // namespace gdist
