#include "qanneal/cli.hpp"

int main(int argc, char** argv) { return qanneal::cli_main(argc, argv); }
