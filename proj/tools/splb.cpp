// splb: command line front end. Subcommands are registered in cli.cpp.
#include "splb/cli.hpp"

int main(int argc, char** argv) { return splb::run_cli(argc, argv); }
