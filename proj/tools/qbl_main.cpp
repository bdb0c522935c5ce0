#include <vector>

#include "qbl/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return qbl::cli::run_cli(args);
}
