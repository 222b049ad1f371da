#include "tac/cli/app.hpp"

int main(int argc, char** argv) { return tac::cli::run(argc, argv); }
