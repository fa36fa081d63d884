#include "qht/cli_app.hpp"

int main(int argc, char** argv) { return qht::run_cli(argc, argv); }
