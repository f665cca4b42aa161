#include <iostream>

#include "app.hpp"

int main(int argc, char** argv) { return charvar::cli::run(argc, argv, std::cout, std::cerr); }
