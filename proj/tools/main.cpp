#include "cplifs/cli.hpp"

int main(int argc, char** argv) { return cplifs::cli_run(argc, argv); }
