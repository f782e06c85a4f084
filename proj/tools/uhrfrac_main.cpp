#include "uhrfrac/cli.hpp"

int main(int argc, char** argv) {
    return uhrfrac::cli::run(argc, argv);
}
