#include "cli/commands.hpp"

int main(int argc, char** argv) { return bohrlab::cli::run(argc, argv); }
