#include "wop/cli.hpp"

int main(int argc, char** argv) { return wop::cli(argc, argv); }
