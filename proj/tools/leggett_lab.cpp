#include "leggett/cli/runner.hpp"

#include <iostream>

int main(int argc, char** argv)
{
  return leggett::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
