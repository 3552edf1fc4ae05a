#include <ngacsafe/cli.hpp>

#include <iostream>
#include <string>
#include <vector>

int main(int argc, char **argv) {
  std::vector<std::string> args(argv, argv + argc);
  return ngacsafe::cli::run(args, std::cin, std::cout, std::cerr);
}
