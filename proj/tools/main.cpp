#include "hrgap/cli.hpp"

int main(int argc, char** argv) {
  return hrgap::run_cli(std::vector<std::string>(argv, argv + argc));
}
