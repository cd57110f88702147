#include "orthokernel/cli.hpp"

int main(int argc, char** argv) { return orthokernel::cli_main(argc, argv); }
