#include "levitherm/cli.hpp"

int main(int argc, char** argv) { return levitherm::cli::run(argc, argv); }
