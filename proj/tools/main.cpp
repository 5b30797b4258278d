#include "focal/cli.hpp"

int main(int argc, char** argv) { return focal::run_cli(argc, argv); }
