#include "qdisp/cli.hpp"

int main(int argc, char** argv) { return qdisp::cli::run(argc, argv); }
