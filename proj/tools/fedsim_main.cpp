#include <iostream>
#include <string>
#include <vector>

#include "fedsim/runner.hpp"

namespace {

int usage() {
    std::cerr << "usage: fedsim run <config> [key=value ...]\n"
                 "       fedsim sweep <config> <key> <v1,v2,...>\n";
    return 2;
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::string::size_type start = 0;
    while (start <= s.size()) {
        auto comma = s.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(s.substr(start));
            break;
        }
        out.push_back(s.substr(start, comma - start));
        start = comma + 1;
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty()) {
        return usage();
    }
    const std::string& command = args[0];
    if (command == "run") {
        if (args.size() < 2) {
            return usage();
        }
        std::vector<std::string> overrides(args.begin() + 2, args.end());
        return fedsim::cli::cmd_run(args[1], overrides);
    }
    if (command == "sweep") {
        if (args.size() != 4) {
            return usage();
        }
        return fedsim::cli::cmd_sweep(args[1], args[2], split_commas(args[3]));
    }
    return usage();
}
