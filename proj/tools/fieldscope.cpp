#include "fieldscope/cli.hpp"

int main(int argc, char** argv) { return fieldscope::cli::run(argc, argv); }
