#include "rhea/cli.hpp"

int main(int argc, char** argv) { return rhea::cli::run_main(argc, argv); }
