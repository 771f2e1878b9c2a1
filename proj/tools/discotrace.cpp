#include "discotrace/cli.hpp"

int main(int argc, char** argv) { return discotrace::cli::run(argc, argv); }
