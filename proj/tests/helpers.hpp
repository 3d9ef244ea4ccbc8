#pragma once

#include <random>
#include <vector>

#include "axb/word.hpp"

namespace axb::testing {

using Rng = std::mt19937_64;

inline long long rand_range(Rng& rng, long long lo, long long hi) {
    return std::uniform_int_distribution<long long>(lo, hi)(rng);
}

inline Letter random_letter(Rng& rng, Mode mode, long long max_index) {
    int kinds = mode == Mode::Z ? 5 : 4;
    switch (rand_range(rng, 0, kinds - 1)) {
        case 0: return Letter::u();
        case 1: return Letter::u_star();
        case 2: return Letter::s(rand_range(rng, 1, max_index));
        case 3: return Letter::s_star(rand_range(rng, 1, max_index));
        default: return Letter::f();
    }
}

inline Word random_word(Rng& rng, Mode mode, size_t max_len, long long max_index) {
    Word w;
    size_t len = static_cast<size_t>(rand_range(rng, 1, static_cast<long long>(max_len)));
    for (size_t i = 0; i < len; ++i) w.push_back(random_letter(rng, mode, max_index));
    return w;
}

inline Monomial random_monomial(Rng& rng, Mode mode, long long max_u, long long max_s) {
    long long m = rand_range(rng, 1, max_s);
    return Monomial{rand_range(rng, -max_u, max_u), rand_range(rng, 1, max_s), m, rand_range(rng, 0, m - 1),
                    mode == Mode::Z ? static_cast<int>(rand_range(rng, 0, 1)) : 0};
}

}  // namespace axb::testing
