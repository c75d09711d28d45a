#pragma once

namespace shapecat {

// Entry point behind the shapecat binary; exposed so tests can drive it.
// Returns 0 on success, 1 on usage errors, 2 on data errors.
int run_cli(int argc, const char* const* argv);

}  // namespace shapecat
