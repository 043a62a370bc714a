#include "cita/cli.hpp"

int main(int argc, char** argv) { return cita::cli::run(argc, argv); }
