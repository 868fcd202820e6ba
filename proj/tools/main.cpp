#include "cli.hpp"

int main(int argc, char** argv) { return qbos::cli::run(argc, argv); }
