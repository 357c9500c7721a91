// Prints the merged eigenvalue table of the flat unit ball for every form
// degree on a chosen boundary sphere, with exact rationals.

#include <cstdio>
#include <cstdlib>
#include <string>

#include "steklov/ball_spectrum.hpp"

using namespace steklov;

int main(int argc, char** argv) {
    const int n = argc > 1 ? std::atoi(argv[1]) : 3;
    const int k_max = argc > 2 ? std::atoi(argv[2]) : 3;
    if (n < 1 || k_max < 0) {
        std::fprintf(stderr, "usage: %s [n >= 1] [k_max >= 0]\n", argv[0]);
        return 2;
    }
    std::printf("boundary sphere dimension n = %d, family indices k <= %d\n\n", n, k_max);
    for (int p = 0; p <= n; ++p) {
        std::printf("p = %d   (first eigenvalue %s)\n", p,
                    to_string(first_eigenvalue(n, p)).c_str());
        for (const SpectrumEntry& e : enumerate_spectrum(n, p, {k_max, true}))
            std::printf("  nu = %-8s  family=%-8s k=%d  multiplicity=%d\n",
                        to_string(e.eigenvalue).c_str(), to_string(e.family), e.k,
                        e.multiplicity);
    }
    return 0;
}
