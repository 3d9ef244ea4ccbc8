#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "axb/profinite.hpp"
#include "axb/rational.hpp"

namespace axb {

struct InvalidIndex : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Whether the flip generator f is admitted.
enum class Mode { N, Z };

// ---------------------------------------------------------------------------
// Canonical monomial u^i s_n s_m* u^j f^eps with 0 <= j < m.  Products and
// adjoints of monomials are again monomials (or zero), which makes equality
// of linear combinations decidable by coefficient comparison.

struct Monomial {
    long long i = 0;
    long long n = 1;
    long long m = 1;
    long long j = 0;
    int eps = 0;

    static Monomial unit() { return {}; }

    bool is_unit() const { return i == 0 && n == 1 && m == 1 && j == 0 && eps == 0; }

    // Diagonal projection u^{-j} e_n u^{j}, i.e. the congruence class -j mod n.
    bool is_cylinder() const { return n == m && i + j == 0 && eps == 0; }
    CylinderSet cylinder() const;

    // The partial map on basis indices: k -> n((-1)^eps k + j)/m + i,
    // defined when m divides (-1)^eps k + j.
    std::optional<long long> apply(long long k) const;

    long long u_degree() const { return i + j; }
    std::map<long long, int> s_multidegree() const;
    int flip_parity() const { return eps; }

    auto operator<=>(const Monomial&) const = default;
};

// Net gauge weights of a monomial; multiplicative under products.
struct GaugeDegree {
    long long u_degree = 0;
    std::map<long long, int> s_multidegree;
    int flip_parity = 0;
};

GaugeDegree gauge_degree(const Monomial& w);

// Product of canonical monomials; nullopt means the product is zero.
std::optional<Monomial> mono_product(const Monomial& a, const Monomial& b);

// Adjoint of a canonical monomial (the coefficient is conjugated separately).
Monomial mono_adjoint(const Monomial& a);

// ---------------------------------------------------------------------------
// Generator letters and words.

struct Letter {
    enum Kind { U, Ustar, S, Sstar, F } kind = U;
    long long index = 1;  // for S / Sstar

    static Letter u() { return {U, 1}; }
    static Letter u_star() { return {Ustar, 1}; }
    static Letter s(long long n) { return {S, n}; }
    static Letter s_star(long long n) { return {Sstar, n}; }
    static Letter f() { return {F, 1}; }
};

using Word = std::vector<Letter>;

// The letter as a canonical monomial; s_{-n} (Z mode) becomes s_n f.
Monomial letter_monomial(const Letter& l, Mode mode);

Word adjoint_word(const Word& w);

// ---------------------------------------------------------------------------
// Finite linear combinations of canonical monomials.

class Element {
  public:
    using Terms = std::map<Monomial, GaussianRational>;

    Element() = default;
    static Element zero() { return {}; }
    static Element one() { return Element(Monomial::unit()); }
    explicit Element(const Monomial& w, GaussianRational c = GaussianRational(1));

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    Element& operator+=(const Element& o);
    Element& operator-=(const Element& o);
    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    Element operator*(const Element& o) const;
    Element scaled(const GaussianRational& c) const;
    Element adjoint() const;

    // Plain coefficient equality of canonical forms.
    friend bool operator==(const Element&, const Element&) = default;

    void add_term(const Monomial& w, const GaussianRational& c);

  private:
    Terms terms_;
};

// Canonical form of a generator word.
Element normal_form(const Word& w, Mode mode);

// Equality in the algebra: coefficient comparison after refining every
// diagonal-type monomial (n = m) to the common cylinder level, which decides
// identities that rest on the partition-of-unity relation.
bool equal_in_algebra(const Element& x, const Element& y);

// Refinement of x at cylinder level L (every n = m monomial with n | L is
// split into its level-L congruence classes).
Element refine_to_level(const Element& x, long long level);

// ---------------------------------------------------------------------------
// Expectations, trace, KMS.

Element expectation_E(const Element& x);
Element expectation_F(const Element& x);
Element expectation_G(const Element& x);

GaussianRational trace_tau(const Element& x);

// lambda_i(y) scales each monomial by m/n; checks tau(x lambda_i(y)) = tau(yx).
bool kms_check(const Element& x, const Element& y);

// sum_{k<n} u^k e_n u^{-k} = 1, decided by the cylinder calculus.
bool partition_of_unity_check(long long n);

// ---------------------------------------------------------------------------
// Identity suites.

struct SuiteResult {
    std::string name;
    bool passed = true;
    std::string counterexample;
};

std::vector<SuiteResult> lemma_comm_suite(long long bound);
std::vector<SuiteResult> defining_relations_suite(long long bound, Mode mode);

// ---------------------------------------------------------------------------
// Word grammar and printing.

Word parse_word(const std::string& text, Mode mode);
Element parse_element(const std::string& text, Mode mode);

std::string to_string(const Monomial& w);
std::string to_string(const Element& x);

}  // namespace axb
