#include "shrinkpath/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return shrinkpath::cli_main(args);
}
