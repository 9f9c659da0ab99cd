#include "mopip/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return mopip::run_cli(argc, argv, std::cout, std::cerr); }
