#include <string>
#include <vector>

#include "fracmoment/cli.hpp"

int main(int argc, char** argv) {
    return fracmoment::run_cli(std::vector<std::string>(argv, argv + argc));
}
