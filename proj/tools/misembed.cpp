#include "misembed/cli.hpp"

int main(int argc, char **argv) { return misembed::cli_main(argc, argv); }
