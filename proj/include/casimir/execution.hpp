#pragma once

namespace casimir {

// Serial is the reference path. Parallel distributes independent work items
// with OpenMP; reductions are always done afterwards in a fixed order, so the
// two policies produce bitwise identical results.
enum class Execution { Serial, Parallel };

}  // namespace casimir
