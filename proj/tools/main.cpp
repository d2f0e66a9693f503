#include <string>
#include <vector>

#include "uproc/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return uproc::run_cli(args);
}
