#include "prudentia/cli.hpp"

int main(int argc, char** argv) { return prudentia::cli::run(argc, argv); }
