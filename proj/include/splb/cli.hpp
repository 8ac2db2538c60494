#pragma once

namespace splb {

// Exit codes: 0 success (including runs that end in detected blow-up),
// 2 configuration or usage error, 3 internal numerical failure.
int run_cli(int argc, char** argv);

}  // namespace splb
