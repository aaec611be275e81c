#include "hazard_lfd/cli.hpp"

int main(int argc, char** argv) { return hazard_lfd::cli::run(argc, argv); }
