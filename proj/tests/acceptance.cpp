// Runs the nine acceptance criteria and prints one PASS/FAIL line per criterion.
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <iostream>

#include "nahodge/selftest.hpp"

int main(int argc, char **argv) {
    const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 20240611;
    const auto start = std::chrono::steady_clock::now();
    bool all = true;
    for (const auto &r : nahodge::selftest::run_all(seed)) {
        std::cout << (r.passed ? "PASS" : "FAIL") << " " << r.id << " " << r.name << " (" << r.detail << ")\n";
        all = all && r.passed;
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    std::cout << "elapsed " << ms.count() << " ms\n";
    return all ? 0 : 1;
}
