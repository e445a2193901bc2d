#pragma once

namespace fieldscope {

// Every data-parallel kernel ships a plain serial loop next to its OpenMP
// version. The serial path is the reference the tests compare against; both
// produce bit-identical output.
enum class Execution { serial, parallel };

// Worker count used by Execution::parallel. Zero restores the OpenMP default.
void set_worker_count(int n);
int worker_count();

}  // namespace fieldscope
