#include "slicelab/cli.hpp"

int main(int argc, char** argv) { return slicelab::run_cli(argc, argv); }
