#pragma once

namespace excm {

// Execution strategy for the heavy enumeration kernels. Parallel runs must
// produce byte-identical results to serial ones; the serial path is the
// reference the tests compare against.
enum class Exec { serial, parallel };

}  // namespace excm
