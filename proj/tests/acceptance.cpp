// Acceptance suite driver: runs every criterion and prints one line each.

#include <cstring>
#include <iostream>

#include "dpcodes/accept.hpp"

int main(int argc, char** argv) {
    int only = 0;
    std::string data_dir = DPCODES_DATA_DIR;
    for (int i = 1; i < argc; ++i) {
        if (std::strncmp(argv[i], "--criterion=", 12) == 0) only = std::atoi(argv[i] + 12);
        if (std::strncmp(argv[i], "--data-dir=", 11) == 0) data_dir = argv[i] + 11;
    }
    auto results = dpc::accept::run(data_dir, std::cout, only);
    bool ok = dpc::accept::all_pass(results);
    std::cout << (ok ? "acceptance: all criteria passed" : "acceptance: FAILURES present")
              << std::endl;
    return ok ? 0 : 1;
}
