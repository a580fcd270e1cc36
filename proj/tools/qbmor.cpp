#include "qbmor/cli.hpp"

int main(int argc, char** argv) { return qbmor::cli::run(argc, argv); }
