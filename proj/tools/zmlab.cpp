#include "zmlab/cli.hpp"

int main(int argc, char** argv) { return zmlab::cli::run(argc, argv); }
