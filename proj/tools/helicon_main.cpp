#include <string>
#include <vector>

#include "helicon/cli.hpp"

int main(int argc, char** argv) {
    return helicon::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
