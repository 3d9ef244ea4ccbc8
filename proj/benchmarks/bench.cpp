#include <benchmark/benchmark.h>

#include <random>

#include "axb/ktheory.hpp"
#include "axb/profinite.hpp"
#include "axb/rep.hpp"
#include "axb/word.hpp"

using namespace axb;

namespace {

Word make_word(std::mt19937_64& rng, size_t len, long long max_index) {
    std::uniform_int_distribution<int> kind(0, 3);
    std::uniform_int_distribution<long long> idx(1, max_index);
    Word w;
    for (size_t i = 0; i < len; ++i) {
        switch (kind(rng)) {
            case 0: w.push_back(Letter::u()); break;
            case 1: w.push_back(Letter::u_star()); break;
            case 2: w.push_back(Letter::s(idx(rng))); break;
            default: w.push_back(Letter::s_star(idx(rng))); break;
        }
    }
    return w;
}

void BM_normal_form(benchmark::State& state) {
    std::mt19937_64 rng(5);
    std::vector<Word> words;
    for (int i = 0; i < 64; ++i) words.push_back(make_word(rng, static_cast<size_t>(state.range(0)), 10));
    size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(normal_form(words[i++ % words.size()], Mode::N));
    }
}
BENCHMARK(BM_normal_form)->Arg(8)->Arg(16)->Arg(32);

void BM_equal_in_algebra_partition(benchmark::State& state) {
    long long n = state.range(0);
    Element sum;
    for (long long k = 0; k < n; ++k) {
        Element uk(Monomial{k, 1, 1, 0, 0}), uk_inv(Monomial{-k, 1, 1, 0, 0});
        sum += uk * Element(Monomial{0, n, n, 0, 0}) * uk_inv;
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(equal_in_algebra(sum, Element::one()));
    }
}
BENCHMARK(BM_equal_in_algebra_partition)->Arg(16)->Arg(64)->Arg(256);

void BM_oracle_window(benchmark::State& state) {
    Element x = parse_element("s6 S4 u u S3", Mode::N);
    for (auto _ : state) {
        benchmark::DoNotOptimize(oracle_equal(x, x, state.range(0)));
    }
}
BENCHMARK(BM_oracle_window)->Arg(100)->Arg(1000);

void BM_smith_normal_form(benchmark::State& state) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> entry(-9, 9);
    size_t n = static_cast<size_t>(state.range(0));
    IntMat m(n, std::vector<Int>(n));
    for (auto& row : m)
        for (auto& x : row) x = entry(rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(smith_normal_form(m));
    }
}
BENCHMARK(BM_smith_normal_form)->Arg(4)->Arg(8)->Arg(16);

void BM_adele_action(benchmark::State& state) {
    std::vector<long long> primes{2, 3, 5, 7, 11, 13};
    FiniteAdele x = embed_rational(Rational(22, 7), primes, static_cast<int>(state.range(0)));
    AxbElement g(Rational(3, 2), Rational(5, 6));
    for (auto _ : state) {
        benchmark::DoNotOptimize(axb_act(g, x));
    }
}
BENCHMARK(BM_adele_action)->Arg(8)->Arg(32)->Arg(128);

void BM_shift_embedding(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(shift_embedding_check(static_cast<size_t>(state.range(0))));
    }
}
BENCHMARK(BM_shift_embedding)->Arg(8)->Arg(32)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
