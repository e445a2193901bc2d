#include "fieldscope/execution.hpp"

#include <omp.h>

namespace fieldscope {

namespace {
int default_workers = 0;
}

void set_worker_count(int n) {
  if (default_workers == 0) default_workers = omp_get_max_threads();
  omp_set_num_threads(n > 0 ? n : default_workers);
}

int worker_count() { return omp_get_max_threads(); }

}  // namespace fieldscope
