#include "cli.hpp"

int main(int argc, char** argv) { return m2ma::cli::run(argc, argv); }
