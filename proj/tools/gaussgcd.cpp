#include "gaussgcd/experiment.hpp"

int main(int argc, char** argv) { return gaussgcd::cli::main(argc, argv); }
