#include <iostream>

#include "negprob/cli.hpp"

int main(int argc, char** argv) { return negprob::run_cli(argc, argv, std::cout, std::cerr); }
