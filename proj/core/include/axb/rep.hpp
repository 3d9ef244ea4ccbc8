#pragma once

#include <map>
#include <optional>
#include <vector>

#include "axb/rational.hpp"
#include "axb/word.hpp"

namespace axb {

// ---------------------------------------------------------------------------
// The canonical representation on l^2(Z), kept structurally: every monomial
// acts as a partial affine map on basis indices, so operator identities are
// decidable exactly instead of through matrix windows.

struct AffineCongruenceMap {
    Rational slope = 1;   // never zero; sign carries the flip
    Rational offset = 0;
    Int modulus = 1;      // defined on k = residue (mod modulus)
    Int residue = 0;

    static AffineCongruenceMap identity() { return {}; }

    bool is_total() const { return modulus == 1; }
    std::optional<Int> apply(const Int& k) const;

    friend bool operator==(const AffineCongruenceMap&, const AffineCongruenceMap&) = default;
};

// Exact composition a after b; nullopt when the domains are incompatible.
std::optional<AffineCongruenceMap> compose(const AffineCongruenceMap& a, const AffineCongruenceMap& b);

AffineCongruenceMap generator_map(const Letter& l, Mode mode = Mode::Z);
AffineCongruenceMap monomial_map(const Monomial& w);

// Letter-by-letter composition of a word; nullopt when the product vanishes.
std::optional<AffineCongruenceMap> word_map(const Word& w, Mode mode);

// ---------------------------------------------------------------------------
// Oracle evaluation of algebra elements on basis vectors.

// The formal image of xi_k under x: output index -> coefficient.
std::map<Int, GaussianRational> evaluate_element(const Element& x, const Int& k);

// Exact comparison of the two elements on all basis indices in [-B, B].
bool oracle_equal(const Element& x, const Element& y, long long bound);

// ---------------------------------------------------------------------------
// Windowed density cross-checks.

struct WindowModel {
    long long half_width;  // basis indices [-W, W]
    explicit WindowModel(long long w) : half_width(w) {
        if (w < 1) throw std::invalid_argument("window half-width must be positive");
    }
    bool contains(long long k) const { return k >= -half_width && k <= half_width; }
};

// (1/(2W+1)) * sum of diagonal coefficients over the window, exact.
Rational window_trace(const Element& x, long long half_width);

// ---------------------------------------------------------------------------
// Mapping-torus covariance: the image sum tau_k(f_n) e_{k,k+n} of a finitely
// supported coefficient family satisfies f(t+1) = U f(t) U* on the window
// interior, with U the bilateral shift.

using SampledFunction = std::map<Rational, Rational>;

bool mapping_torus_covariance(const std::map<long long, SampledFunction>& family,
                              const std::vector<Rational>& grid, long long half_width);

}  // namespace axb
