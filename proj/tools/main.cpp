#include "kronlab/cli.hpp"

int main(int argc, char** argv) { return kronlab::run_cli(argc, argv); }
