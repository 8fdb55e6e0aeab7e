#include "tilt/cli.hpp"

int main(int argc, char** argv) { return tilt::cli::run(argc, argv); }
