#include <thue1728/cli.hpp>

#include <iostream>

int main(int argc, char** argv) { return thue1728::cli::run(argc, argv, std::cout, std::cerr); }
