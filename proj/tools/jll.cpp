#include "jll/cli.hpp"

int main(int argc, char** argv) { return jll::cli::run(argc, argv); }
