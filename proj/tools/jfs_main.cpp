#include "jfs/cli/cli.hpp"

int main(int argc, char** argv) { return jfs::cli::run(argc, argv); }
