#include "wave/runner.hpp"

int main(int argc, char** argv) { return wave::cli_main(argc, argv); }
