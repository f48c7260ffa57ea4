#include "app.hpp"

#include <iostream>

int main(int argc, char** argv) { return otfs::cli::run(argc, argv, std::cout, std::cerr); }
