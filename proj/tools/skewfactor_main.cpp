#include <string>
#include <vector>

#include "skewfactor/cli.hpp"

int main(int argc, char** argv) {
  return skewfactor::cli_main(std::vector<std::string>(argv + 1, argv + argc));
}
