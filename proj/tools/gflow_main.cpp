// gflow_main.cpp
// Thin executable wrapper around the library's CLI entry point.

#include <string>
#include <vector>

#include "gflow/lab.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return gflow::cli_main(args);
}
