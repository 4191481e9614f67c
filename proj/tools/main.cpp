#include "isotonic/cli.hpp"

int main(int argc, char** argv) { return isotonic::cli::run(argc, argv); }
