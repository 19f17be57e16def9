#pragma once

namespace jll::cli {

// full command-line front end; returns the process exit code
int run(int argc, const char* const* argv);

}  // namespace jll::cli
