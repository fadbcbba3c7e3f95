#include "deint/cli.hpp"

int main(int argc, char** argv) { return deint::run_cli(argc, argv); }
