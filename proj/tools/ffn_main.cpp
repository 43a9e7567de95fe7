#include "ffn/cli/cli.hpp"

int main(int argc, char** argv) { return ffn::cli::run(argc, argv); }
