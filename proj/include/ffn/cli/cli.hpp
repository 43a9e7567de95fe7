#pragma once

namespace ffn::cli {

// Entry point for the ffn command-line tool. Returns the process exit code:
// 0 success, 1 usage error, 2 data error, 3 training failure.
int run(int argc, const char* const* argv);

}  // namespace ffn::cli
