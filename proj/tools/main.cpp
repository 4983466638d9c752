#include "cyclesheaf/cli.hpp"

int main(int argc, char** argv) { return cyclesheaf::cli::run(argc, argv); }
