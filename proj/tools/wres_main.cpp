#include "wres/cli.hpp"

int main(int argc, char** argv) { return wres::cli_main(argc, argv); }
