#include "axb/rep.hpp"

#include <cassert>

namespace axb {

namespace {

Int mod_norm(Int v, const Int& m) {
    v %= m;
    if (v < 0) v += m;
    return v;
}

bool is_integer(const Rational& q) { return denominator(q) == 1; }

}  // namespace

std::optional<Int> AffineCongruenceMap::apply(const Int& k) const {
    if (mod_norm(k, modulus) != residue) return std::nullopt;
    Rational v = slope * Rational(k) + offset;
    assert(is_integer(v));
    return numerator(v);
}

std::optional<AffineCongruenceMap> compose(const AffineCongruenceMap& a, const AffineCongruenceMap& b) {
    // Parametrize dom(b) as k = r_b + M_b t; on it b(k) = B + A t with
    // integers B = b(r_b), A = slope_b * M_b.  Then require B + A t = r_a
    // (mod M_a).
    Rational Ar = b.slope * Rational(b.modulus);
    Rational Br = b.slope * Rational(b.residue) + b.offset;
    assert(is_integer(Ar) && is_integer(Br));
    Int A = numerator(Ar), B = numerator(Br);

    Int rhs = mod_norm(a.residue - B, a.modulus);
    Int g = boost::multiprecision::gcd(mod_norm(A, a.modulus) == 0 ? a.modulus : mod_norm(A, a.modulus), a.modulus);
    if (rhs % g != 0) return std::nullopt;
    Int M1 = a.modulus / g;
    Int t0 = 0;
    if (M1 > 1) t0 = mod_norm((rhs / g) * mod_inverse(mod_norm(A / g, M1), M1), M1);

    AffineCongruenceMap out;
    out.modulus = b.modulus * M1;
    out.residue = mod_norm(b.residue + b.modulus * t0, out.modulus);
    out.slope = a.slope * b.slope;
    out.offset = a.slope * b.offset + a.offset;
    return out;
}

AffineCongruenceMap generator_map(const Letter& l, Mode mode) {
    return monomial_map(letter_monomial(l, mode));
}

AffineCongruenceMap monomial_map(const Monomial& w) {
    long long sigma = w.eps ? -1 : 1;
    AffineCongruenceMap out;
    out.slope = Rational(sigma * w.n, w.m);
    out.offset = Rational(w.n * w.j, w.m) + w.i;
    out.modulus = w.m;
    out.residue = mod_norm(Int(sigma * -w.j), Int(w.m));
    return out;
}

std::optional<AffineCongruenceMap> word_map(const Word& w, Mode mode) {
    std::optional<AffineCongruenceMap> acc = AffineCongruenceMap::identity();
    // The word acts with its rightmost letter first, so fold from the left.
    for (const Letter& l : w) {
        acc = compose(*acc, generator_map(l, mode));
        if (!acc) return std::nullopt;
    }
    return acc;
}

std::map<Int, GaussianRational> evaluate_element(const Element& x, const Int& k) {
    std::map<Int, GaussianRational> out;
    for (auto& [w, c] : x.terms()) {
        if (auto img = monomial_map(w).apply(k)) {
            auto [it, inserted] = out.try_emplace(*img, c);
            if (!inserted) {
                it->second += c;
                if (it->second.is_zero()) out.erase(it);
            }
        }
    }
    return out;
}

bool oracle_equal(const Element& x, const Element& y, long long bound) {
    if (bound < 1) throw std::invalid_argument("oracle bound must be positive");
    for (long long k = -bound; k <= bound; ++k) {
        if (evaluate_element(x, k) != evaluate_element(y, k)) return false;
    }
    return true;
}

Rational window_trace(const Element& x, long long half_width) {
    WindowModel window(half_width);
    Rational diag_sum = 0;
    for (auto& [w, c] : x.terms()) {
        if (!c.is_real()) throw DomainError("window trace expects real coefficients");
        AffineCongruenceMap map = monomial_map(w);
        if (map.slope == 1) {
            if (map.offset != 0) continue;
            diag_sum += c.re * count_congruent_in_window(static_cast<long long>(map.residue),
                                                         static_cast<long long>(map.modulus), half_width);
        } else {
            // A non-translation affine map has at most one fixed point.
            Rational fp = map.offset / (Rational(1) - map.slope);
            if (!is_integer(fp)) continue;
            Int k = numerator(fp);
            if (k >= -half_width && k <= half_width && map.apply(k)) diag_sum += c.re;
        }
    }
    return diag_sum / (2 * half_width + 1);
}

bool mapping_torus_covariance(const std::map<long long, SampledFunction>& family,
                              const std::vector<Rational>& grid, long long half_width) {
    WindowModel window(half_width);
    long long W = window.half_width;
    auto sample = [&](long long n, const Rational& t) -> Rational {
        auto fit = family.find(n);
        if (fit == family.end()) return 0;
        auto vit = fit->second.find(t);
        return vit == fit->second.end() ? Rational(0) : vit->second;
    };
    // F(t)[k][k+n] = f_n(t - k); covariance F(t+1) = U F(t) U* on the interior.
    auto build = [&](const Rational& t) {
        std::map<std::pair<long long, long long>, Rational> mat;
        for (auto& [n, fn] : family) {
            (void)fn;
            for (long long k = -W; k <= W; ++k) {
                if (!window.contains(k + n)) continue;
                Rational v = sample(n, t - k);
                if (v != 0) mat[{k, k + n}] = v;
            }
        }
        return mat;
    };
    for (const Rational& t : grid) {
        auto lhs = build(t + 1);
        auto rhs = build(t);  // conjugation by the shift moves (k, l) to (k+1, l+1)
        for (long long k = -W + 1; k <= W - 1; ++k) {
            for (auto& [pos, v] : rhs) {
                if (pos.first != k - 1) continue;
                long long l = pos.second + 1;
                if (l < -W + 1 || l > W - 1) continue;
                auto it = lhs.find({k, l});
                if ((it == lhs.end() ? Rational(0) : it->second) != v) return false;
            }
            for (auto& [pos, v] : lhs) {
                if (pos.first != k) continue;
                long long l = pos.second;
                if (l < -W + 1 || l > W - 1) continue;
                auto it = rhs.find({k - 1, l - 1});
                if ((it == rhs.end() ? Rational(0) : it->second) != v) return false;
            }
        }
    }
    return true;
}

}  // namespace axb
