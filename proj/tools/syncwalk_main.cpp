#include "syncwalk/cli.hpp"

int main(int argc, char** argv) { return syncwalk::cli::run_main(argc, argv); }
