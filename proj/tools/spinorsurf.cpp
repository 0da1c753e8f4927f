#include "spinorsurf/cli.hpp"

int main(int argc, char** argv) { return spinorsurf::cli_main(argc, argv); }
