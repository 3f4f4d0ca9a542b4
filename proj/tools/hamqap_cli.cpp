#include "hamqap/cli.hpp"

int main(int argc, char** argv) { return hamqap::cli_main(argc, argv); }
