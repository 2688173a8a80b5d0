#include "cli_runner.hpp"

int main(int argc, char** argv) { return mhdvac::cli::run_cli(argc, argv); }
