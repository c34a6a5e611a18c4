#include "oriflag/cli.hpp"

int main(int argc, char** argv) { return oriflag::cli::run(argc, argv); }
