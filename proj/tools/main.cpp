#include "cli.hpp"

int main(int argc, char** argv) { return mew::cli::cli_main(argc, argv); }
