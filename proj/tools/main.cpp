#include "cli.hpp"

int main(int argc, char** argv) { return nlsmooth::cli::run(argc, argv); }
