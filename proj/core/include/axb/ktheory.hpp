#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "axb/rational.hpp"

namespace axb {

struct ExtensionAmbiguous : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InsufficientStages : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotPrime : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using IntMat = std::vector<std::vector<Int>>;
using QMat = std::vector<std::vector<Rational>>;

IntMat identity_mat(size_t n);
IntMat mat_mul(const IntMat& a, const IntMat& b);
std::vector<Int> mat_apply(const IntMat& a, const std::vector<Int>& v);

// ---------------------------------------------------------------------------
// Smith normal form: D = U * M * V with U, V unimodular and D diagonal with
// successive divisibility.

struct SmithResult {
    IntMat d, u, v;
    std::vector<Int> invariant_factors;  // nonzero diagonal entries, in order
};

SmithResult smith_normal_form(const IntMat& m);

size_t mat_rank(const IntMat& m);
Int mat_det(const IntMat& m);

// ---------------------------------------------------------------------------
// Finitely generated abelian groups by rank and invariant factors.

struct AbGroup {
    size_t rank = 0;
    std::vector<Int> torsion;  // invariant factors > 1, each dividing the next

    static AbGroup free(size_t r) { return {r, {}}; }
    // Z^generators / column span of the relation matrix.
    static AbGroup from_relations(size_t generators, const IntMat& relations);

    bool is_free() const { return torsion.empty(); }
    bool is_trivial() const { return rank == 0 && torsion.empty(); }
    std::string to_string() const;
    friend bool operator==(const AbGroup&, const AbGroup&) = default;
};

struct GroupHom {
    IntMat matrix;  // target generators x source generators
};

AbGroup hom_cokernel(size_t target_rank, const IntMat& m);
size_t hom_kernel_rank(const IntMat& m);

// ---------------------------------------------------------------------------
// Groups appearing in the Pimsner-Voiculescu computation: a divisible summand
// Q^d with a rational automorphism block, plus a free summand Z^r with an
// integer block.  Covers every induced-map datum the computation needs.

struct PVGroup {
    size_t q_dim = 0;          // divisible summand Q^q_dim
    QMat alpha_q;              // action on it
    size_t free_rank = 0;      // free summand Z^free_rank
    IntMat alpha_free;         // action on it

    static PVGroup rational_line(const Rational& scale);
    static PVGroup free_identity(size_t rank);
    static PVGroup trivial() { return {}; }
    PVGroup direct_sum(const PVGroup& o) const;
};

struct KGroup {
    size_t q_dim = 0;  // leftover divisible summands (zero in every computed case)
    size_t rank = 0;
    std::vector<Int> torsion;
    std::string to_string() const;
    friend bool operator==(const KGroup&, const KGroup&) = default;
};

struct PVCertificate {
    size_t ker0_rank = 0, ker1_rank = 0;
    bool kernels_free = true;
};

// One crossed-product step: K0' = coker(id - a0) + ker(id - a1) and
// K1' = coker(id - a1) + ker(id - a0); throws ExtensionAmbiguous unless the
// kernel summands are free.
std::pair<KGroup, KGroup> pv_step(const PVGroup& k0, const PVGroup& k1, PVCertificate* cert = nullptr);

// K-groups of B_1..B_n (mode N) or B'_1..B'_n (mode Z); the induced maps are
// x2 on the divisible part of the first step and the identity afterwards.
enum class KMode { N, Z };
std::vector<std::pair<KGroup, KGroup>> iterate_bn(size_t n, KMode mode);

// ---------------------------------------------------------------------------
// Sequence colimits with stage-truncated certificates.

class IndAbGroup {
  public:
    // stage_gens[s] generators at stage s; maps[s] : stage s -> stage s+1.
    IndAbGroup(std::vector<size_t> stage_gens, std::vector<IntMat> maps);

    size_t stages() const { return stage_gens_.size(); }
    size_t generators(size_t stage) const;
    const IntMat& connecting_map(size_t stage) const;

    // Composite stage 0 -> stage s (identity for s = 0).
    IntMat composite(size_t s) const;

    size_t image_rank(size_t s) const;
    // The colimit truncated at stage s embeds in the free stage-s group, so
    // it is torsion-free whenever the stage presentation is.
    bool stage_torsion_free(size_t s) const;

    // Least materialized stage s at which the class of x (at stage 0) is
    // divisible by n, i.e. every coordinate of the composite image is.
    std::optional<size_t> divisibility_witness(const std::vector<Int>& x, const Int& n) const;

  private:
    std::vector<size_t> stage_gens_;
    std::vector<IntMat> maps_;
};

struct ColimitCertificate {
    bool answer = false;
    std::optional<size_t> witness_stage;
    std::string detail;
};

// Built-in systems.
std::vector<long long> first_primes(size_t count);
// Bunce-Deddens K0: Z with multiplication maps, primes round-robin
// (2; 2,3; 2,3,5; ...) for the given number of stages.
IndAbGroup bunce_deddens_system(size_t stages);
IndAbGroup constant_system(size_t stages);
// Z^3 stages under the dihedral K0 matrices over the given primes.
IndAbGroup fprime_system(const std::vector<long long>& primes);

// Round-robin multiplier sequence used by bunce_deddens_system.
std::vector<long long> round_robin_primes(size_t stages);

// ---------------------------------------------------------------------------
// Lemma-style transition matrices and the circle-shift embedding.

bool is_prime(long long p);

// Transition matrix of K0 under e_1 -> M_p refinement, generator order
// ([1], [(uf)+], [f+]).
IntMat dihedral_k0_matrix(long long p);

// Laurent polynomials with integer coefficients and matrices over them.
using LaurentPoly = std::map<long long, Int>;  // exponent -> coefficient

LaurentPoly laurent_mono(long long exp, Int coeff = 1);
LaurentPoly laurent_add(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly laurent_mul(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly laurent_star(const LaurentPoly& a);  // z -> z^{-1}
bool laurent_is_zero(const LaurentPoly& a);

struct LaurentMatrix {
    std::vector<std::vector<LaurentPoly>> entries;

    static LaurentMatrix identity(size_t k);
    // k x k shift with 1 on the subdiagonal and z in the top-right corner.
    static LaurentMatrix shift_embedding(size_t k);

    size_t size() const { return entries.size(); }
    LaurentMatrix operator*(const LaurentMatrix& o) const;
    LaurentMatrix adjoint() const;  // transpose with z -> z^{-1}
    bool operator==(const LaurentMatrix& o) const;

    bool is_unitary() const;
    // Determinant of a monomial matrix (one nonzero entry per row/column).
    LaurentPoly monomial_determinant() const;
};

// V unitary and V^k = z * 1 over the Laurent ring.
bool shift_embedding_check(size_t k);

}  // namespace axb
