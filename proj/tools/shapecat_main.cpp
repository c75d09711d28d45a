#include "shapecat/cli.hpp"

int main(int argc, char** argv) { return shapecat::run_cli(argc, argv); }
