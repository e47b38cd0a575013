#include "arid/cli.hpp"

int main(int argc, char** argv) { return arid::cli::run_cli(argc, argv); }
