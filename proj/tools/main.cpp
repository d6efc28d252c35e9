#include <string>
#include <vector>

#include "comfortctl/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    return comfortctl::run_command(args);
}
