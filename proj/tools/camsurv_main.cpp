#include "camsurv/cli.hpp"

int main(int argc, char** argv) { return camsurv::run_cli(argc, argv); }
