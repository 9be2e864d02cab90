#include <vector>
#include <string>

#include "mbios/cli.hpp"

int main(int argc, char** argv) {
  return mbios::cli::run(std::vector<std::string>(argv, argv + argc));
}
