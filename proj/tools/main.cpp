#include "bbeta/cli.hpp"

int main(int argc, char** argv) { return bbeta::cli::run(argc, argv); }
