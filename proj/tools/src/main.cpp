#include "nilflat/cli.hpp"

int main(int argc, char** argv) { return nilflat::cli::main_entry(argc, argv); }
