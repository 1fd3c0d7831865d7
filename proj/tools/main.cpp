#include "docforge/cli.hpp"

int main(int argc, char** argv) { return docforge::run_cli(argc, argv); }
