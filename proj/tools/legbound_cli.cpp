#include "legbound/cli.hpp"

int main(int argc, char** argv) { return legbound::cli::run(argc, argv); }
