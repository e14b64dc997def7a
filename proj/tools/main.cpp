#include <iostream>

#include "peerscope/cli.hpp"

int main(int argc, char** argv) { return peerscope::cli::run(argc, argv, std::cout, std::cerr); }
