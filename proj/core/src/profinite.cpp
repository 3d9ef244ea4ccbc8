#include "axb/profinite.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace axb {

long long gcd_ll(long long a, long long b) { return std::gcd(a, b); }
long long lcm_ll(long long a, long long b) { return a / std::gcd(a, b) * b; }

std::map<long long, int> factorize(Int n) {
    if (n < 0) n = -n;
    std::map<long long, int> out;
    if (n <= 1) return out;
    for (Int p = 2; p * p <= n; ++p) {
        while (n % p == 0) {
            ++out[static_cast<long long>(p)];
            n /= p;
        }
    }
    if (n > 1) out[static_cast<long long>(n)] += 1;
    return out;
}

Int pow_int(long long p, int e) {
    Int r = 1;
    for (int i = 0; i < e; ++i) r *= p;
    return r;
}

Int mod_inverse(const Int& a, const Int& m) {
    Int old_r = a % m, r = m;
    if (old_r < 0) old_r += m;
    Int old_s = 1, s = 0;
    while (r != 0) {
        Int q = old_r / r;
        Int tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
    }
    if (old_r != 1) throw std::invalid_argument("not invertible");
    old_s %= m;
    if (old_s < 0) old_s += m;
    return old_s;
}

// ---------------------------------------------------------------------------
// Cylinders

std::optional<CylinderSet> cylinder_intersect(const CylinderSet& c1, const CylinderSet& c2) {
    long long g = gcd_ll(c1.modulus, c2.modulus);
    if ((c1.residue - c2.residue) % g != 0) return std::nullopt;
    long long l = lcm_ll(c1.modulus, c2.modulus);
    // CRT: r = r1 + m1 * t with r = r2 (mod m2).
    Int m1 = c1.modulus, m2 = c2.modulus;
    Int step = m1 / g;
    Int target = (Int(c2.residue) - Int(c1.residue)) / g;
    Int inv = mod_inverse(step % (m2 / g), m2 / g);
    Int t = (target % (m2 / g)) * inv % (m2 / g);
    if (t < 0) t += m2 / g;
    Int r = Int(c1.residue) + m1 * t;
    return CylinderSet(l, static_cast<long long>(r % l));
}

Rational cylinder_measure(const std::optional<CylinderSet>& c) {
    if (!c) return 0;
    return Rational(1, c->modulus);
}

CylinderSet cylinder_scale(long long n, const CylinderSet& c) {
    if (n <= 0) throw std::invalid_argument("scale factor must be positive");
    return CylinderSet(n * c.modulus, n * c.residue);
}

long long count_congruent_in_window(long long r, long long n, long long W) {
    // #{k in [-W, W] : k = r (mod n)}
    auto count_up_to = [&](long long x) {  // #{k in [0, x] : k = r mod n}, x >= -1
        if (x < 0) return 0LL;
        long long rr = ((r % n) + n) % n;
        if (x < rr) return 0LL;
        return (x - rr) / n + 1;
    };
    // negative side: k in [-W, -1] with k = r mod n  <=>  j in [1, W], j = -r mod n
    long long rr = (((-r) % n) + n) % n;
    long long neg = 0;
    if (W >= 1) {
        if (rr == 0) rr = n;  // j >= 1
        if (W >= rr) neg = (W - rr) / n + 1;
    }
    return count_up_to(W) + neg;
}

// ---------------------------------------------------------------------------
// ProfiniteInteger

ProfiniteInteger ProfiniteInteger::from_integer(const Int& v, const std::map<long long, int>& levels) {
    ProfiniteInteger x;
    for (auto& [p, k] : levels) x.set(p, k, v);
    return x;
}

void ProfiniteInteger::set(long long p, int level, Int residue) {
    if (level <= 0) {
        towers_.erase(p);
        return;
    }
    Int m = pow_int(p, level);
    residue %= m;
    if (residue < 0) residue += m;
    towers_[p] = Digits{level, std::move(residue)};
}

int ProfiniteInteger::level(long long p) const {
    auto it = towers_.find(p);
    return it == towers_.end() ? 0 : it->second.level;
}

Int ProfiniteInteger::residue(long long p) const {
    auto it = towers_.find(p);
    if (it == towers_.end()) throw std::out_of_range("prime not tracked");
    return it->second.residue;
}

ProfiniteInteger ProfiniteInteger::operator+(const ProfiniteInteger& o) const {
    ProfiniteInteger out;
    for (auto& [p, d] : towers_) {
        auto it = o.towers_.find(p);
        if (it == o.towers_.end()) continue;
        int k = std::min(d.level, it->second.level);
        out.set(p, k, d.residue + it->second.residue);
    }
    return out;
}

ProfiniteInteger ProfiniteInteger::operator*(const ProfiniteInteger& o) const {
    ProfiniteInteger out;
    for (auto& [p, d] : towers_) {
        auto it = o.towers_.find(p);
        if (it == o.towers_.end()) continue;
        int k = std::min(d.level, it->second.level);
        out.set(p, k, d.residue * it->second.residue);
    }
    return out;
}

ProfiniteInteger ProfiniteInteger::add_int(const Int& t) const {
    ProfiniteInteger out;
    for (auto& [p, d] : towers_) out.set(p, d.level, d.residue + t);
    return out;
}

ProfiniteInteger ProfiniteInteger::mul_int(const Int& n) const {
    if (n == 0) throw std::invalid_argument("multiplier must be nonzero");
    ProfiniteInteger out;
    auto fac = factorize(n);
    for (auto& [p, d] : towers_) {
        auto it = fac.find(p);
        int bump = it == fac.end() ? 0 : it->second;
        out.set(p, d.level + bump, d.residue * n);
    }
    // Primes dividing n that were untracked become tracked: n*x = 0 mod p^v_p(n).
    for (auto& [p, e] : fac)
        if (!tracks(p)) out.set(p, e, 0);
    return out;
}

ProfiniteInteger ProfiniteInteger::mul_unit(const Int& n) const {
    ProfiniteInteger out;
    for (auto& [p, d] : towers_) {
        if (n % p == 0) throw std::invalid_argument("not a unit at tracked prime");
        out.set(p, d.level, d.residue * n);
    }
    return out;
}

ProfiniteInteger ProfiniteInteger::div_exact(const Int& d) const {
    if (d <= 0) throw std::invalid_argument("divisor must be positive");
    auto fac = factorize(d);
    ProfiniteInteger out;
    for (auto& [p, dig] : towers_) {
        auto it = fac.find(p);
        if (it == fac.end()) {
            out.set(p, dig.level, dig.residue * mod_inverse(d % pow_int(p, dig.level), pow_int(p, dig.level)));
            continue;
        }
        int e = it->second;
        if (dig.level < e) throw InsufficientPrecision("division consumes more p-adic digits than tracked");
        Int pe = pow_int(p, e);
        if (dig.residue % pe != 0) throw std::invalid_argument("residue not divisible");
        Int cof = d / pe;
        int k = dig.level - e;
        if (k > 0) {
            Int m = pow_int(p, k);
            out.set(p, k, (dig.residue / pe) * mod_inverse(cof % m, m));
        }
    }
    for (auto& [p, e] : fac)
        if (!tracks(p)) throw InsufficientPrecision("division by an untracked prime");
    return out;
}

bool ProfiniteInteger::agrees_with(const ProfiniteInteger& o) const {
    for (auto& [p, d] : towers_) {
        auto it = o.towers_.find(p);
        if (it == o.towers_.end()) continue;
        int k = std::min(d.level, it->second.level);
        Int m = pow_int(p, k);
        if ((d.residue - it->second.residue) % m != 0) return false;
    }
    return true;
}

ProfiniteInteger mul_n(long long n, const ProfiniteInteger& x) {
    if (n <= 0) throw std::invalid_argument("mul_n needs a positive integer");
    return x.mul_int(Int(n));
}

// ---------------------------------------------------------------------------
// FiniteAdele

FiniteAdele::FiniteAdele(ProfiniteInteger part, Rational shift) : part_(std::move(part)), shift_(std::move(shift)) {
    Int t = rational_floor(shift_);
    if (t != 0) {
        shift_ -= Rational(t);
        part_ = part_.add_int(t);
    }
}

bool FiniteAdele::agrees_with(const FiniteAdele& o) const {
    return shift_ == o.shift_ && part_.agrees_with(o.part_);
}

std::string FiniteAdele::to_string() const {
    std::ostringstream os;
    os << shift_ << " + [";
    bool first = true;
    for (auto& [p, d] : part_.towers()) {
        if (!first) os << ", ";
        first = false;
        os << p << "^" << d.level << ": " << d.residue;
    }
    os << "]";
    return os.str();
}

namespace {

void skip_ws(const std::string& s, size_t& i) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

Int parse_int(const std::string& s, size_t& i) {
    skip_ws(s, i);
    size_t start = i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start || (i == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start])))) {
        throw ParseError("expected integer at position " + std::to_string(start));
    }
    return Int(s.substr(start, i - start));
}

bool is_prime_base(const Int& p) {
    if (p < 2) return false;
    for (Int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

void expect(const std::string& s, size_t& i, char c) {
    skip_ws(s, i);
    if (i >= s.size() || s[i] != c) throw ParseError(std::string("expected '") + c + "'");
    ++i;
}

}  // namespace

FiniteAdele FiniteAdele::parse(const std::string& text) {
    size_t i = 0;
    Int num = parse_int(text, i);
    Int den = 1;
    skip_ws(text, i);
    if (i < text.size() && text[i] == '/') {
        ++i;
        den = parse_int(text, i);
        if (den <= 0) throw ParseError("denominator must be positive");
    }
    expect(text, i, '+');
    expect(text, i, '[');
    ProfiniteInteger part;
    skip_ws(text, i);
    if (i < text.size() && text[i] != ']') {
        while (true) {
            Int p = parse_int(text, i);
            expect(text, i, '^');
            Int k = parse_int(text, i);
            expect(text, i, ':');
            Int r = parse_int(text, i);
            if (!is_prime_base(p) || k < 1) throw ParseError("invalid prime power");
            part.set(static_cast<long long>(p), static_cast<int>(k), r);
            skip_ws(text, i);
            if (i < text.size() && text[i] == ',') {
                ++i;
                continue;
            }
            break;
        }
    }
    expect(text, i, ']');
    skip_ws(text, i);
    if (i != text.size()) throw ParseError("trailing input after adele");
    return FiniteAdele(std::move(part), Rational(num, den));
}

FiniteAdele embed_rational(const Rational& q, const std::vector<long long>& primes, int level) {
    Rational frac = fractional_part(q);
    Int whole = rational_floor(q);
    std::map<long long, int> levels;
    for (long long p : primes) levels[p] = level;
    return FiniteAdele(ProfiniteInteger::from_integer(whole, levels), frac);
}

FiniteAdele axb_act(const AxbElement& g, const FiniteAdele& x) {
    Int n = numerator(g.a);
    Int d = denominator(g.a);

    ProfiniteInteger z = x.integral_part().mul_int(n);
    Rational extra = 0;
    if (d != 1) {
        // Split z/d = m/d + (z - m)/d with m the CRT lift of the residues at
        // the primes dividing d; requires enough tracked digits there.
        Int m = 0, modulus = 1;
        for (auto& [p, e] : factorize(d)) {
            if (z.level(p) < e) throw InsufficientPrecision("action needs more digits at prime " + std::to_string(p));
            Int pe = pow_int(p, e);
            Int rp = z.residue(p) % pe;
            // CRT combine (m mod modulus) with (rp mod pe)
            Int inv = mod_inverse(modulus % pe, pe);
            Int t = ((rp - m) % pe) * inv % pe;
            if (t < 0) t += pe;
            m += modulus * t;
            modulus *= pe;
        }
        z = z.add_int(-m).div_exact(d);
        extra = Rational(m, d);
    }
    return FiniteAdele(std::move(z), g.a * x.shift() + extra + g.b);
}

// ---------------------------------------------------------------------------
// Bost-Connes characters

long long bc_character_exponent(long long a, long long b, long long x) {
    long long e = (a % b) * (x % b) % b;
    return (e % b + b) % b;
}

bool bc_character_covariance(long long a, long long b, long long bound) {
    if (b <= 0 || b > bound) throw std::invalid_argument("denominator out of range");
    for (long long x = 0; x < b; ++x) {
        long long lhs = bc_character_exponent(a, b, x + 1);
        long long rhs = (bc_character_exponent(a, b, x) + a) % b;
        if (lhs != ((rhs % b) + b) % b) return false;
    }
    return true;
}

}  // namespace axb
