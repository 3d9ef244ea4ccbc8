#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "axb/rational.hpp"

namespace axb {

// Thrown when a division would consume more p-adic digits than are tracked.
struct InsufficientPrecision : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Cylinder sets {x : x = residue mod modulus} in the profinite completion.
// The empty intersection is represented by std::nullopt throughout.

struct CylinderSet {
    long long modulus = 1;
    long long residue = 0;  // normalized into [0, modulus)

    CylinderSet() = default;
    CylinderSet(long long mod, long long res) : modulus(mod) {
        if (mod <= 0) throw std::invalid_argument("cylinder modulus must be positive");
        residue = ((res % mod) + mod) % mod;
    }
    friend bool operator==(const CylinderSet&, const CylinderSet&) = default;
};

std::optional<CylinderSet> cylinder_intersect(const CylinderSet& c1, const CylinderSet& c2);
Rational cylinder_measure(const std::optional<CylinderSet>& c);

// Image of a cylinder under multiplication by n: (r mod M) -> (nr mod nM).
CylinderSet cylinder_scale(long long n, const CylinderSet& c);

// Number of k in [-W, W] with k = r (mod n); used for density cross-checks.
long long count_congruent_in_window(long long r, long long n, long long W);

// ---------------------------------------------------------------------------
// Profinite integers as finite-precision residue towers.  An untracked prime
// carries no information; arithmetic propagates the minimum precision of the
// operands at each commonly tracked prime.

class ProfiniteInteger {
  public:
    struct Digits {
        int level = 0;   // tracked modulo p^level
        Int residue;     // in [0, p^level)
    };

    ProfiniteInteger() = default;

    // The integer v tracked at the given prime -> level map.
    static ProfiniteInteger from_integer(const Int& v, const std::map<long long, int>& levels);

    void set(long long p, int level, Int residue);
    const std::map<long long, Digits>& towers() const { return towers_; }
    bool tracks(long long p) const { return towers_.count(p) != 0; }
    int level(long long p) const;
    Int residue(long long p) const;

    ProfiniteInteger operator+(const ProfiniteInteger& o) const;
    ProfiniteInteger operator*(const ProfiniteInteger& o) const;

    // Exact-integer operations keep every tracked digit.
    ProfiniteInteger add_int(const Int& t) const;

    // Multiplication by a nonzero integer; precision at p rises by v_p(n).
    ProfiniteInteger mul_int(const Int& n) const;

    // Multiplication by an integer unit at all tracked primes (gcd(n, p) = 1).
    ProfiniteInteger mul_unit(const Int& n) const;

    // Exact division by a positive integer d; throws InsufficientPrecision
    // when some p^e || d exceeds the tracked digits.  Valid only when every
    // residue at p | d vanishes mod p^e.
    ProfiniteInteger div_exact(const Int& d) const;

    // Agreement at all commonly tracked prime powers (minimum precision).
    bool agrees_with(const ProfiniteInteger& o) const;

  private:
    std::map<long long, Digits> towers_;
};

Int pow_int(long long p, int e);

// mul_n of the profinite module: n * x with precision bookkeeping.
ProfiniteInteger mul_n(long long n, const ProfiniteInteger& x);

// ---------------------------------------------------------------------------
// Finite adeles in the form (integral profinite part) + (rational shift).
// Canonical form keeps the shift in [0, 1); its integer part is absorbed
// into the residue tower.

class FiniteAdele {
  public:
    FiniteAdele() = default;
    FiniteAdele(ProfiniteInteger part, Rational shift);

    const ProfiniteInteger& integral_part() const { return part_; }
    const Rational& shift() const { return shift_; }

    bool is_integral() const { return shift_ == 0; }

    // Equality of the jointly determined data: canonical shifts coincide and
    // residues agree at all commonly tracked prime powers.
    bool agrees_with(const FiniteAdele& o) const;

    std::string to_string() const;
    static FiniteAdele parse(const std::string& text);

  private:
    ProfiniteInteger part_;
    Rational shift_;
};

// Diagonal embedding of a rational, tracked at the given primes and level.
FiniteAdele embed_rational(const Rational& q, const std::vector<long long>& primes, int level);

// ---------------------------------------------------------------------------
// The ax+b group over Q: (a, b) acts by x -> a*x + b.

struct AxbElement {
    Rational a = 1;
    Rational b = 0;

    AxbElement() = default;
    AxbElement(Rational a_, Rational b_) : a(std::move(a_)), b(std::move(b_)) {
        if (a == 0) throw std::invalid_argument("ax+b element needs a != 0");
    }
    AxbElement operator*(const AxbElement& o) const { return {a * o.a, a * o.b + b}; }
    AxbElement inverse() const { return {1 / a, -b / a}; }
    friend bool operator==(const AxbElement&, const AxbElement&) = default;
};

FiniteAdele axb_act(const AxbElement& g, const FiniteAdele& x);

// ---------------------------------------------------------------------------
// Bost-Connes character covariance.  e_gamma for gamma = a/b is the function
// x -> zeta_b^(a*x); the check verifies e_gamma(x+1) = zeta_b^a e_gamma(x)
// for every residue x mod b, working on exponents mod b only.

bool bc_character_covariance(long long a, long long b, long long bound);

// Exponent of e_{a/b} at the residue x, i.e. a*x mod b.
long long bc_character_exponent(long long a, long long b, long long x);

// Small utilities shared across modules.
long long gcd_ll(long long a, long long b);
long long lcm_ll(long long a, long long b);
std::map<long long, int> factorize(Int n);
Int mod_inverse(const Int& a, const Int& m);

}  // namespace axb
