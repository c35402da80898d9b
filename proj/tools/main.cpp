#include "bnp/cli.hpp"

int main(int argc, char** argv) { return bnp::run_cli(argc, argv); }
