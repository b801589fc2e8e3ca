#include <iostream>
#include <string>
#include <vector>

#include "ocspath/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return ocspath::run(args, std::cin, std::cout, std::cerr);
}
