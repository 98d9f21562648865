#include "tgmaps/cli.hpp"

int main(int argc, char** argv) { return tgmaps::cli::dispatch(argc, argv); }
