#pragma once

#include <iostream>

namespace orthokernel {

/// Entry point of the `orthokernel` tool. Exit codes: 0 everything passed,
/// 1 a property violation (or a failed construction), 2 an input error.
int cli_main(int argc, const char* const* argv, std::ostream& out = std::cout,
             std::ostream& err = std::cerr);

}  // namespace orthokernel
