#include "ldirac/cli.hpp"

int main(int argc, char** argv) { return ldirac::cli::run_cli(argc, argv); }
