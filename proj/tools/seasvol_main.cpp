#include "seasvol/cli.hpp"

int main(int argc, char** argv) { return seasvol::cli::run(argc, argv); }
