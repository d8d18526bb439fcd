#include "kulikov/cli.hpp"

int main(int argc, char** argv) { return kulikov::cli::run(argc, argv); }
