#include "cli.hpp"

int main(int argc, char** argv) { return irlsunwrap::cli::run(argc, argv); }
