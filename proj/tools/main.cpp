#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return psk::cli_main(argc, argv, std::cout, std::cerr); }
