#include <iostream>

#include "zpf_cli.hpp"

int main(int argc, char** argv) { return zpf::cli::run(argc, argv, std::cout, std::cerr); }
