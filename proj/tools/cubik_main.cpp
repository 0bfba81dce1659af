#include "cubik/cli.h"

int main(int argc, char** argv) { return cubik::cli_run(argc, argv); }
