#include <vector>
#include <string>

#include "fractile/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return fractile::cli::dispatch(args);
}
