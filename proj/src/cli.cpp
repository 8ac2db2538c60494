#include "splb/cli.hpp"

#include <cstdio>

namespace splb {

int run_cli(int, char**) {
  std::fprintf(stderr, "splb: not wired up yet\n");
  return 2;
}

}  // namespace splb
