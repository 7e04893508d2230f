#include <string>
#include <vector>

#include "pgrad/cli.hpp"

int main(int argc, char** argv) {
    return pgrad::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
