#include "latchaos/cli/commands.hpp"

int main(int argc, char** argv) { return latchaos::cli::run(argc, argv); }
