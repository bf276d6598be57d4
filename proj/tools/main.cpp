#include "cli.hpp"

int main(int argc, char** argv) { return bigbracket::cli::run(argc, argv, std::cout, std::cerr); }
