#include "axb/word.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <numeric>
#include <sstream>

namespace axb {

namespace {

long long floor_div(long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

long long mod_inverse_ll(long long a, long long m) {
    if (m == 1) return 0;
    return static_cast<long long>(mod_inverse(Int(a), Int(m)));
}

}  // namespace

CylinderSet Monomial::cylinder() const {
    if (!is_cylinder()) throw DomainError("monomial is not a cylinder projection");
    return CylinderSet(n, -j);
}

std::optional<long long> Monomial::apply(long long k) const {
    long long t = (eps ? -k : k) + j;
    if (t % m != 0) return std::nullopt;
    return n * (t / m) + i;
}

std::map<long long, int> Monomial::s_multidegree() const {
    std::map<long long, int> deg;
    for (auto& [p, e] : factorize(Int(n))) deg[p] += e;
    for (auto& [p, e] : factorize(Int(m))) deg[p] -= e;
    std::erase_if(deg, [](auto& kv) { return kv.second == 0; });
    return deg;
}

GaugeDegree gauge_degree(const Monomial& w) {
    return GaugeDegree{w.u_degree(), w.s_multidegree(), w.eps};
}

std::optional<Monomial> mono_product(const Monomial& a, const Monomial& b) {
    // Move a's flip across b: f u^k f = u^{-k}, f s_n = s_n f.
    long long sigma = a.eps ? -1 : 1;
    long long bi = sigma * b.i;
    long long bj = sigma * b.j;
    int eps = a.eps ^ b.eps;

    // Middle reduction s_{a.m}* u^t s_{b.n}:  zero unless gcd | t, otherwise
    // u^{i'} s_{b.n/g} s_{a.m/g}* u^{j'}.
    long long t = a.j + bi;
    long long g = std::gcd(a.m, b.n);
    if (t % g != 0) return std::nullopt;
    long long mg = a.m / g;
    long long pg = b.n / g;
    long long jp = mg == 1 ? 0 : (((t / g) % mg) * mod_inverse_ll(pg % mg, mg)) % mg;
    if (jp < 0) jp += mg;
    assert((t - b.n * jp) % a.m == 0);
    long long ip = (t - b.n * jp) / a.m;

    long long N = a.n * pg;
    long long M = mg * b.m;
    long long r = bj + b.m * jp;
    long long c = floor_div(r, M);
    return Monomial{a.i + a.n * ip + N * c, N, M, r - c * M, eps};
}

Monomial mono_adjoint(const Monomial& a) {
    long long top = a.eps ? a.i : -a.i;  // exponent entering the right slot
    long long c = floor_div(top, a.n);
    long long j2 = top - c * a.n;
    long long lead = (a.eps ? a.j : -a.j) + a.m * c;
    return Monomial{lead, a.m, a.n, j2, a.eps};
}

Monomial letter_monomial(const Letter& l, Mode mode) {
    switch (l.kind) {
        case Letter::U:
            return Monomial{1, 1, 1, 0, 0};
        case Letter::Ustar:
            return Monomial{-1, 1, 1, 0, 0};
        case Letter::F:
            if (mode == Mode::N) throw InvalidIndex("the flip f requires Z mode");
            return Monomial{0, 1, 1, 0, 1};
        case Letter::S:
        case Letter::Sstar: {
            long long n = l.index;
            if (n == 0) throw InvalidIndex("s_0 is not a generator");
            if (n < 0 && mode == Mode::N) throw InvalidIndex("s_n with n < 0 requires Z mode");
            int eps = n < 0 ? 1 : 0;
            n = n < 0 ? -n : n;
            if (l.kind == Letter::S) return Monomial{0, n, 1, 0, eps};
            return Monomial{0, 1, n, 0, eps};
        }
    }
    throw InvalidIndex("unknown letter");
}

Word adjoint_word(const Word& w) {
    Word out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        Letter l = *it;
        switch (l.kind) {
            case Letter::U: l.kind = Letter::Ustar; break;
            case Letter::Ustar: l.kind = Letter::U; break;
            case Letter::S: l.kind = Letter::Sstar; break;
            case Letter::Sstar: l.kind = Letter::S; break;
            case Letter::F: break;
        }
        out.push_back(l);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Element

Element::Element(const Monomial& w, GaussianRational c) {
    if (!c.is_zero()) terms_[w] = std::move(c);
}

void Element::add_term(const Monomial& w, const GaussianRational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Element& Element::operator+=(const Element& o) {
    for (auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
}

Element& Element::operator-=(const Element& o) {
    for (auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
}

Element Element::operator*(const Element& o) const {
    Element out;
    for (auto& [w1, c1] : terms_)
        for (auto& [w2, c2] : o.terms_)
            if (auto w = mono_product(w1, w2)) out.add_term(*w, c1 * c2);
    return out;
}

Element Element::scaled(const GaussianRational& c) const {
    Element out;
    for (auto& [w, cw] : terms_) out.add_term(w, cw * c);
    return out;
}

Element Element::adjoint() const {
    Element out;
    for (auto& [w, c] : terms_) out.add_term(mono_adjoint(w), c.conj());
    return out;
}

Element normal_form(const Word& w, Mode mode) {
    Monomial acc = Monomial::unit();
    for (const Letter& l : w) {
        auto next = mono_product(acc, letter_monomial(l, mode));
        if (!next) return Element::zero();
        acc = *next;
    }
    return Element(acc);
}

// ---------------------------------------------------------------------------
// Equality via cylinder refinement

Element refine_to_level(const Element& x, long long level) {
    Element out;
    for (auto& [w, c] : x.terms()) {
        if (w.n != w.m || level % w.n != 0) {
            out.add_term(w, c);
            continue;
        }
        long long d = w.i + w.j;
        long long r = ((-w.j) % w.n + w.n) % w.n;
        for (long long t = 0; t < level / w.n; ++t) {
            long long rt = r + t * w.n;
            long long jt = ((-rt) % level + level) % level;
            out.add_term(Monomial{d - jt, level, level, jt, w.eps}, c);
        }
    }
    return out;
}

bool equal_in_algebra(const Element& x, const Element& y) {
    Element diff = x - y;
    if (diff.is_zero()) return true;
    long long level = 1;
    for (auto& [w, c] : diff.terms())
        if (w.n == w.m) level = std::lcm(level, w.n);
    return refine_to_level(diff, level).is_zero();
}

// ---------------------------------------------------------------------------
// Expectations, trace, KMS

Element expectation_E(const Element& x) {
    Element out;
    for (auto& [w, c] : x.terms())
        if (w.n == w.m) out.add_term(w, c);
    return out;
}

Element expectation_F(const Element& x) {
    Element out;
    for (auto& [w, c] : x.terms()) {
        if (w.n != w.m) throw DomainError("expectation F needs an element of the gauge-fixed part");
        if (w.u_degree() == 0 && w.eps == 0) out.add_term(w, c);
    }
    return out;
}

Element expectation_G(const Element& x) { return expectation_F(expectation_E(x)); }

GaussianRational trace_tau(const Element& x) {
    GaussianRational out;
    for (auto& [w, c] : x.terms())
        if (w.is_cylinder()) out += c * GaussianRational(Rational(1, w.n));
    return out;
}

bool kms_check(const Element& x, const Element& y) {
    Element lambda_y;
    for (auto& [w, c] : y.terms()) lambda_y.add_term(w, c * GaussianRational(Rational(w.m, w.n)));
    return trace_tau(x * lambda_y) == trace_tau(y * x);
}

bool partition_of_unity_check(long long n) {
    if (n < 1) throw InvalidIndex("partition of unity needs n >= 1");
    Element sum;
    Monomial en{0, n, n, 0, 0};
    for (long long k = 0; k < n; ++k) {
        Word w;
        // u^k e_n u^{-k} as a word
        for (long long t = 0; t < k; ++t) w.push_back(Letter::u());
        w.push_back(Letter::s(n));
        w.push_back(Letter::s_star(n));
        for (long long t = 0; t < k; ++t) w.push_back(Letter::u_star());
        sum += normal_form(w, Mode::N);
    }
    return equal_in_algebra(sum, Element::one());
}

// ---------------------------------------------------------------------------
// Suites

namespace {

Element e_proj(long long n) { return Element(Monomial{0, n, n, 0, 0}); }

Element conj_by_u_power(const Element& x, long long k) {
    Element uk(Monomial{k, 1, 1, 0, 0});
    Element uk_inv(Monomial{-k, 1, 1, 0, 0});
    return uk * x * uk_inv;
}

}  // namespace

std::vector<SuiteResult> lemma_comm_suite(long long bound) {
    if (bound < 2) throw std::invalid_argument("bound must be at least 2");
    SuiteResult a{"lemma-comm-a"}, b{"lemma-comm-b"}, c{"lemma-comm-c"};

    for (long long n = 1; n <= bound && a.passed; ++n) {
        for (long long m = 1; m <= bound; ++m) {
            Element rhs;
            for (long long i = 0; i < m; ++i) rhs += conj_by_u_power(e_proj(n * m), i * n);
            if (!equal_in_algebra(e_proj(n), rhs)) {
                a.passed = false;
                a.counterexample = "n=" + std::to_string(n) + " m=" + std::to_string(m);
                break;
            }
        }
    }

    // (b) in the form established in the proof: e_p s_q = e_{pq} s_q = s_q e_p.
    for (long long p = 1; p <= bound && b.passed; ++p) {
        for (long long q = 1; q <= bound; ++q) {
            if (std::gcd(p, q) != 1) continue;
            Element sq(Monomial{0, q, 1, 0, 0});
            Element lhs = e_proj(p) * sq;
            if (!(lhs == e_proj(p * q) * sq && lhs == sq * e_proj(p) &&
                  e_proj(p) * e_proj(q) == e_proj(p * q) && e_proj(q) * e_proj(p) == e_proj(p * q))) {
                b.passed = false;
                b.counterexample = "p=" + std::to_string(p) + " q=" + std::to_string(q);
                break;
            }
        }
    }

    // (c) needs coprime indices: for g = gcd(n, m) > 1 the two sides differ
    // already on the basis representation (s_n* s_n = 1 while s_n s_n* = e_n).
    for (long long n = 1; n <= bound && c.passed; ++n) {
        for (long long m = 1; m <= bound; ++m) {
            if (std::gcd(n, m) != 1) continue;
            Element lhs = normal_form({Letter::s_star(n), Letter::s(m)}, Mode::N);
            Element rhs = normal_form({Letter::s(m), Letter::s_star(n)}, Mode::N);
            if (!(lhs == rhs)) {
                c.passed = false;
                c.counterexample = "n=" + std::to_string(n) + " m=" + std::to_string(m);
                break;
            }
        }
    }
    return {a, b, c};
}

std::vector<SuiteResult> defining_relations_suite(long long bound, Mode mode) {
    SuiteResult mult{"s_n s_m = s_nm"}, shift{"s_n u = u^n s_n"}, isom{"s_n* s_n = 1"}, part{"partition of unity"};
    for (long long n = 1; n <= bound; ++n) {
        for (long long m = 1; m <= bound && mult.passed; ++m) {
            if (normal_form({Letter::s(n), Letter::s(m)}, mode) != Element(Monomial{0, n * m, 1, 0, 0})) {
                mult.passed = false;
                mult.counterexample = "n=" + std::to_string(n) + " m=" + std::to_string(m);
            }
        }
        if (shift.passed) {
            Element lhs = normal_form({Letter::s(n), Letter::u()}, mode);
            if (lhs != Element(Monomial{n, n, 1, 0, 0})) {
                shift.passed = false;
                shift.counterexample = "n=" + std::to_string(n);
            }
        }
        if (isom.passed && normal_form({Letter::s_star(n), Letter::s(n)}, mode) != Element::one()) {
            isom.passed = false;
            isom.counterexample = "n=" + std::to_string(n);
        }
        if (part.passed && !partition_of_unity_check(n)) {
            part.passed = false;
            part.counterexample = "n=" + std::to_string(n);
        }
    }
    std::vector<SuiteResult> out{mult, shift, isom, part};
    if (mode == Mode::Z) {
        SuiteResult flip{"f^2 = 1, fuf = u^-1, f s_n = s_n f"};
        if (normal_form({Letter::f(), Letter::f()}, mode) != Element::one()) {
            flip.passed = false;
            flip.counterexample = "f^2";
        }
        if (flip.passed &&
            normal_form({Letter::f(), Letter::u(), Letter::f()}, mode) != Element(Monomial{-1, 1, 1, 0, 0})) {
            flip.passed = false;
            flip.counterexample = "fuf";
        }
        for (long long n = 2; n <= bound && flip.passed; ++n) {
            if (normal_form({Letter::f(), Letter::s(n)}, mode) != normal_form({Letter::s(n), Letter::f()}, mode)) {
                flip.passed = false;
                flip.counterexample = "f s_" + std::to_string(n);
            }
        }
        out.push_back(flip);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Parsing and printing

namespace {

void skip_spaces(const std::string& s, size_t& i) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

long long parse_index(const std::string& s, size_t& i) {
    size_t start = i;
    if (i < s.size() && s[i] == '-') ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start || (s[start] == '-' && i == start + 1)) throw ParseError("expected generator index");
    return std::stoll(s.substr(start, i - start));
}

// A term is [coefficient '*']? letters; the coefficient is a rational with an
// optional trailing 'i'.
struct Term {
    GaussianRational coeff{Rational(1)};
    Word word;
};

GaussianRational parse_coefficient(const std::string& s, size_t& i) {
    size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    Int num(s.substr(start, i - start));
    Int den = 1;
    if (i < s.size() && s[i] == '/') {
        ++i;
        size_t dstart = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == dstart) throw ParseError("expected denominator");
        den = Int(s.substr(dstart, i - dstart));
        if (den == 0) throw ParseError("zero denominator");
    }
    Rational q(num, den);
    if (i < s.size() && s[i] == 'i') {
        ++i;
        return GaussianRational(Rational(0), q);
    }
    return GaussianRational(q);
}

Term parse_term(const std::string& s, size_t& i, Mode) {
    Term term;
    bool has_coeff = false;
    skip_spaces(s, i);
    if (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])))) {
        size_t save = i;
        has_coeff = true;
        term.coeff = parse_coefficient(s, i);
        skip_spaces(s, i);
        if (i < s.size() && s[i] == '*') {
            ++i;
        } else if (i >= s.size() || s[i] == '+' || s[i] == '-') {
            // bare scalar term, e.g. "1" or "3/4"
            return term;
        } else {
            (void)save;
            throw ParseError("expected '*' after coefficient");
        }
    }
    skip_spaces(s, i);
    while (i < s.size() && s[i] != '+' && s[i] != '-') {
        char c = s[i];
        if (c == 'u' || c == 'U') {
            ++i;
            long long k = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                k = parse_index(s, i);
            }
            Letter l = (c == 'u') == (k >= 0) ? Letter::u() : Letter::u_star();
            for (long long t = 0; t < (k < 0 ? -k : k); ++t) term.word.push_back(l);
        } else if (c == 'f') {
            ++i;
            term.word.push_back(Letter::f());
        } else if (c == 's' || c == 'S') {
            ++i;
            if (i < s.size() && s[i] == '_') ++i;
            long long n = parse_index(s, i);
            term.word.push_back(c == 's' ? Letter::s(n) : Letter::s_star(n));
        } else {
            throw ParseError(std::string("unexpected character '") + c + "' in word");
        }
        skip_spaces(s, i);
    }
    if (!has_coeff && term.word.empty()) throw ParseError("empty term");
    return term;
}

}  // namespace

Word parse_word(const std::string& text, Mode mode) {
    size_t i = 0;
    Term t = parse_term(text, i, mode);
    skip_spaces(text, i);
    if (i != text.size()) throw ParseError("trailing input after word");
    if (t.coeff != GaussianRational(Rational(1))) throw ParseError("a word carries no coefficient");
    return t.word;
}

Element parse_element(const std::string& text, Mode mode) {
    size_t i = 0;
    Element out;
    bool negative = false;
    skip_spaces(text, i);
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        negative = text[i] == '-';
        ++i;
    }
    if (i >= text.size()) throw ParseError("empty element");
    while (true) {
        Term t = parse_term(text, i, mode);
        Element e = normal_form(t.word, mode).scaled(negative ? -t.coeff : t.coeff);
        out += e;
        skip_spaces(text, i);
        if (i >= text.size()) break;
        if (text[i] == '+') negative = false;
        else if (text[i] == '-') negative = true;
        else throw ParseError("expected '+' or '-' between terms");
        ++i;
    }
    return out;
}

std::string to_string(const Monomial& w) {
    if (w.is_unit()) return "1";
    std::ostringstream os;
    bool first = true;
    auto sep = [&] {
        if (!first) os << " ";
        first = false;
    };
    if (w.i != 0) { sep(); os << "u^" << w.i; }
    if (w.n != 1) { sep(); os << "s_" << w.n; }
    if (w.m != 1) { sep(); os << "S_" << w.m; }
    if (w.j != 0) { sep(); os << "u^" << w.j; }
    if (w.eps) { sep(); os << "f"; }
    return os.str();
}

std::string to_string(const Element& x) {
    if (x.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [w, c] : x.terms()) {
        if (!first) os << " + ";
        first = false;
        if (c == GaussianRational(Rational(1))) os << to_string(w);
        else if (w.is_unit()) os << to_string(c);
        else os << to_string(c) << "*" << to_string(w);
    }
    return os.str();
}

}  // namespace axb
