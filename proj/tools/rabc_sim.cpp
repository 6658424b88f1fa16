#include "rabc/cli.hpp"

#include <iostream>

int main(int argc, char **argv)
{
  std::vector<std::string> args(argv, argv + argc);
  return rabc::cli::run_cli(std::move(args), std::cout, std::cerr);
}
