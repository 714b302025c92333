#include "cli.hpp"

int main(int argc, char** argv) { return rmp::cli::main_entry(argc, argv); }
