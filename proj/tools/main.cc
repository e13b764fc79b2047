#include "commands.h"

int main(int argc, char** argv) { return adastream::cli::run(argc, argv); }
