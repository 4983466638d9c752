#include "cyclesheaf/acceptance.hpp"

#include <iostream>

int main() { return cyclesheaf::acceptance::run_all(std::cout) ? 0 : 1; }
