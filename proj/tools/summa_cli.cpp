#include "cli_app.hpp"

int main(int argc, char** argv) { return summa::cli::run(argc, argv); }
