#include "ffhecke/cli.hpp"

int main(int argc, char** argv) { return ffhecke::cli::main(argc, argv); }
