#include "axb/ktheory.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace axb {

namespace {

Int int_abs(const Int& v) { return v < 0 ? Int(-v) : v; }

}  // namespace

IntMat identity_mat(size_t n) {
    IntMat m(n, std::vector<Int>(n, 0));
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

IntMat mat_mul(const IntMat& a, const IntMat& b) {
    size_t rows = a.size(), inner = b.size(), cols = inner ? b[0].size() : 0;
    IntMat out(rows, std::vector<Int>(cols, 0));
    for (size_t i = 0; i < rows; ++i)
        for (size_t k = 0; k < inner; ++k) {
            if (a[i][k] == 0) continue;
            for (size_t j = 0; j < cols; ++j) out[i][j] += a[i][k] * b[k][j];
        }
    return out;
}

std::vector<Int> mat_apply(const IntMat& a, const std::vector<Int>& v) {
    std::vector<Int> out(a.size(), 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) out[i] += a[i][j] * v[j];
    return out;
}

// ---------------------------------------------------------------------------
// Smith normal form

SmithResult smith_normal_form(const IntMat& m) {
    SmithResult res;
    res.d = m;
    size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    res.u = identity_mat(rows);
    res.v = identity_mat(cols);
    IntMat& d = res.d;

    auto swap_rows = [&](size_t a, size_t b) {
        std::swap(d[a], d[b]);
        std::swap(res.u[a], res.u[b]);
    };
    auto swap_cols = [&](size_t a, size_t b) {
        for (auto& row : d) std::swap(row[a], row[b]);
        for (auto& row : res.v) std::swap(row[a], row[b]);
    };
    auto add_row = [&](size_t dst, size_t src, const Int& c) {  // row dst += c * row src
        for (size_t j = 0; j < cols; ++j) d[dst][j] += c * d[src][j];
        for (size_t j = 0; j < rows; ++j) res.u[dst][j] += c * res.u[src][j];
    };
    auto add_col = [&](size_t dst, size_t src, const Int& c) {
        for (size_t i = 0; i < rows; ++i) d[i][dst] += c * d[i][src];
        for (size_t i = 0; i < cols; ++i) res.v[i][dst] += c * res.v[i][src];
    };
    auto negate_row = [&](size_t r) {
        for (auto& x : d[r]) x = -x;
        for (auto& x : res.u[r]) x = -x;
    };

    size_t lim = std::min(rows, cols);
    auto eliminate_from = [&](size_t start) {
        size_t t = start;
        while (t < lim) {
            // Re-select the smallest nonzero entry of the trailing submatrix
            // as pivot before every reduction pass: remainders shrink below
            // the pivot each pass (Euclid), which keeps the entries tame.
            size_t pi = t, pj = t;
            bool found = false;
            Int best = 0;
            for (size_t i = t; i < rows; ++i)
                for (size_t j = t; j < cols; ++j)
                    if (d[i][j] != 0 && (!found || int_abs(d[i][j]) < best)) {
                        best = int_abs(d[i][j]);
                        pi = i;
                        pj = j;
                        found = true;
                    }
            if (!found) break;
            swap_rows(t, pi);
            swap_cols(t, pj);

            bool clean = true;
            for (size_t i = t + 1; i < rows; ++i) {
                if (d[i][t] == 0) continue;
                add_row(i, t, -(d[i][t] / d[t][t]));
                if (d[i][t] != 0) clean = false;
            }
            for (size_t j = t + 1; j < cols; ++j) {
                if (d[t][j] == 0) continue;
                add_col(j, t, -(d[t][j] / d[t][t]));
                if (d[t][j] != 0) clean = false;
            }
            if (!clean) continue;  // smaller remainders exist; re-pivot
            if (d[t][t] < 0) negate_row(t);
            ++t;
        }
        return t;
    };

    size_t t = eliminate_from(0);

    // Enforce successive divisibility on the diagonal pair (a, b) = (d_i, d_j)
    // by the unimodular identity
    //   [[x, y], [-b/g, a/g]] . diag(a, b) . [[1, -yb/g], [1, xa/g]]
    //     = diag(g, ab/g)
    // with g = gcd(a, b) = xa + yb.  Each application strictly shrinks d_i, so
    // the pass converges; no other matrix entries are touched.
    auto ext_gcd = [](Int a, Int b, Int& x, Int& y) {
        Int x0 = 1, y0 = 0, x1 = 0, y1 = 1;
        while (b != 0) {
            Int q = a / b;
            Int r = a - q * b;
            a = b;
            b = r;
            Int nx = x0 - q * x1, ny = y0 - q * y1;
            x0 = x1;
            y0 = y1;
            x1 = nx;
            y1 = ny;
        }
        x = x0;
        y = y0;
        return a;
    };
    auto row_pair = [&](size_t r1, size_t r2, const Int& a11, const Int& a12, const Int& a21, const Int& a22) {
        for (size_t c = 0; c < cols; ++c) {
            Int p = d[r1][c], q = d[r2][c];
            d[r1][c] = a11 * p + a12 * q;
            d[r2][c] = a21 * p + a22 * q;
        }
        for (size_t c = 0; c < rows; ++c) {
            Int p = res.u[r1][c], q = res.u[r2][c];
            res.u[r1][c] = a11 * p + a12 * q;
            res.u[r2][c] = a21 * p + a22 * q;
        }
    };
    auto col_pair = [&](size_t c1, size_t c2, const Int& a11, const Int& a21, const Int& a12, const Int& a22) {
        // new col c1 = a11*col c1 + a21*col c2; new col c2 = a12*col c1 + a22*col c2
        for (size_t r = 0; r < rows; ++r) {
            Int p = d[r][c1], q = d[r][c2];
            d[r][c1] = a11 * p + a21 * q;
            d[r][c2] = a12 * p + a22 * q;
        }
        for (size_t r = 0; r < cols; ++r) {
            Int p = res.v[r][c1], q = res.v[r][c2];
            res.v[r][c1] = a11 * p + a21 * q;
            res.v[r][c2] = a12 * p + a22 * q;
        }
    };
    bool fixed = false;
    while (!fixed) {
        fixed = true;
        for (size_t i = 0; i + 1 < t; ++i)
            for (size_t j = i + 1; j < t; ++j) {
                Int a = d[i][i], b = d[j][j];
                if (a == 0 || b % a == 0) continue;
                Int x, y;
                Int g = ext_gcd(a, b, x, y);
                row_pair(i, j, x, y, -b / g, a / g);
                col_pair(i, j, 1, 1, -y * b / g, x * a / g);
                fixed = false;
            }
    }

    for (size_t i = 0; i < t; ++i)
        if (d[i][i] != 0) res.invariant_factors.push_back(d[i][i]);
    return res;
}

size_t mat_rank(const IntMat& m) { return smith_normal_form(m).invariant_factors.size(); }

Int mat_det(const IntMat& m) {
    size_t n = m.size();
    if (n == 0) return 1;
    assert(m[0].size() == n);
    // fraction-free Gaussian elimination (Bareiss)
    IntMat a = m;
    Int prev = 1;
    Int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            size_t swap = k + 1;
            while (swap < n && a[swap][k] == 0) ++swap;
            if (swap == n) return 0;
            std::swap(a[k], a[swap]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

// ---------------------------------------------------------------------------
// Abelian groups

AbGroup AbGroup::from_relations(size_t generators, const IntMat& relations) {
    AbGroup g;
    if (relations.empty() || relations[0].empty()) {
        g.rank = generators;
        return g;
    }
    auto snf = smith_normal_form(relations);
    g.rank = generators - snf.invariant_factors.size();
    for (auto& f : snf.invariant_factors)
        if (f != 1) g.torsion.push_back(f);
    return g;
}

std::string AbGroup::to_string() const {
    std::ostringstream os;
    bool first = true;
    if (rank > 0) {
        os << "Z";
        if (rank > 1) os << "^" << rank;
        first = false;
    }
    for (auto& t : torsion) {
        if (!first) os << " + ";
        os << "Z/" << t;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

AbGroup hom_cokernel(size_t target_rank, const IntMat& m) {
    return AbGroup::from_relations(target_rank, m);
}

size_t hom_kernel_rank(const IntMat& m) {
    if (m.empty() || m[0].empty()) return m.empty() ? 0 : m[0].size();
    return m[0].size() - mat_rank(m);
}

// ---------------------------------------------------------------------------
// Pimsner-Voiculescu

PVGroup PVGroup::rational_line(const Rational& scale) {
    PVGroup g;
    g.q_dim = 1;
    g.alpha_q = {{scale}};
    return g;
}

PVGroup PVGroup::free_identity(size_t rank) {
    PVGroup g;
    g.free_rank = rank;
    g.alpha_free = identity_mat(rank);
    return g;
}

PVGroup PVGroup::direct_sum(const PVGroup& o) const {
    PVGroup g;
    g.q_dim = q_dim + o.q_dim;
    g.alpha_q = QMat(g.q_dim, std::vector<Rational>(g.q_dim, 0));
    for (size_t i = 0; i < q_dim; ++i)
        for (size_t j = 0; j < q_dim; ++j) g.alpha_q[i][j] = alpha_q[i][j];
    for (size_t i = 0; i < o.q_dim; ++i)
        for (size_t j = 0; j < o.q_dim; ++j) g.alpha_q[q_dim + i][q_dim + j] = o.alpha_q[i][j];
    g.free_rank = free_rank + o.free_rank;
    g.alpha_free = IntMat(g.free_rank, std::vector<Int>(g.free_rank, 0));
    for (size_t i = 0; i < free_rank; ++i)
        for (size_t j = 0; j < free_rank; ++j) g.alpha_free[i][j] = alpha_free[i][j];
    for (size_t i = 0; i < o.free_rank; ++i)
        for (size_t j = 0; j < o.free_rank; ++j) g.alpha_free[free_rank + i][free_rank + j] = o.alpha_free[i][j];
    return g;
}

std::string KGroup::to_string() const {
    AbGroup g{rank, torsion};
    std::string s = g.to_string();
    if (q_dim > 0) s = "Q^" + std::to_string(q_dim) + " + " + s;
    return s;
}

namespace {

size_t q_nullity(const QMat& a) {
    // nullity of (id - a) over Q by Gaussian elimination
    size_t n = a.size();
    QMat m(n, std::vector<Rational>(n, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) m[i][j] = (i == j ? Rational(1) : Rational(0)) - a[i][j];
    size_t rank = 0;
    for (size_t col = 0; col < n && rank < n; ++col) {
        size_t piv = rank;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) continue;
        std::swap(m[piv], m[rank]);
        for (size_t i = 0; i < n; ++i) {
            if (i == rank || m[i][col] == 0) continue;
            Rational f = m[i][col] / m[rank][col];
            for (size_t j = col; j < n; ++j) m[i][j] -= f * m[rank][j];
        }
        ++rank;
    }
    return n - rank;
}

IntMat id_minus(const IntMat& a) {
    size_t n = a.size();
    IntMat m = identity_mat(n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) m[i][j] -= a[i][j];
    return m;
}

}  // namespace

std::pair<KGroup, KGroup> pv_step(const PVGroup& k0, const PVGroup& k1, PVCertificate* cert) {
    // divisible blocks: ker and coker of (id - alpha_q) are Q-vector spaces
    size_t q_ker0 = q_nullity(k0.alpha_q);
    size_t q_ker1 = q_nullity(k1.alpha_q);
    if (q_ker0 > 0 || q_ker1 > 0) {
        throw ExtensionAmbiguous("kernel on a divisible summand is not free; extension undetermined");
    }
    IntMat d0 = id_minus(k0.alpha_free);
    IntMat d1 = id_minus(k1.alpha_free);
    AbGroup coker0 = hom_cokernel(k0.free_rank, d0);
    AbGroup coker1 = hom_cokernel(k1.free_rank, d1);
    size_t ker0 = hom_kernel_rank(d0);
    size_t ker1 = hom_kernel_rank(d1);
    if (cert) {
        cert->ker0_rank = ker0;
        cert->ker1_rank = ker1;
        cert->kernels_free = true;
    }
    KGroup K0{0, coker0.rank + ker1, coker0.torsion};
    KGroup K1{0, coker1.rank + ker0, coker1.torsion};
    return {K0, K1};
}

std::vector<std::pair<KGroup, KGroup>> iterate_bn(size_t n, KMode mode) {
    if (n < 1) throw std::invalid_argument("need n >= 1");
    std::vector<std::pair<KGroup, KGroup>> out;

    PVGroup k0, k1;
    if (mode == KMode::N) {
        // K(F) = (Q, Z); Ad s_2 induces x2 on K0 and the identity on K1.
        k0 = PVGroup::rational_line(2);
        k1 = PVGroup::free_identity(1);
    } else {
        // K(F') = (Q + Z, 0) with x2 on the divisible part.
        k0 = PVGroup::rational_line(2).direct_sum(PVGroup::free_identity(1));
        k1 = PVGroup::trivial();
    }
    auto [K0, K1] = pv_step(k0, k1);
    out.emplace_back(K0, K1);
    for (size_t s = 2; s <= n; ++s) {
        auto& [prev0, prev1] = out.back();
        if (!prev0.torsion.empty() || !prev1.torsion.empty())
            throw ExtensionAmbiguous("identity step over a torsion group");
        auto next = pv_step(PVGroup::free_identity(prev0.rank), PVGroup::free_identity(prev1.rank));
        out.push_back(next);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Colimits

IndAbGroup::IndAbGroup(std::vector<size_t> stage_gens, std::vector<IntMat> maps)
    : stage_gens_(std::move(stage_gens)), maps_(std::move(maps)) {
    if (stage_gens_.empty()) throw std::invalid_argument("need at least one stage");
    if (maps_.size() + 1 != stage_gens_.size()) throw std::invalid_argument("need one connecting map per step");
    for (size_t s = 0; s < maps_.size(); ++s) {
        if (maps_[s].size() != stage_gens_[s + 1] || (maps_[s].empty() ? 0 : maps_[s][0].size()) != stage_gens_[s])
            throw std::invalid_argument("connecting map shape mismatch at stage " + std::to_string(s));
    }
}

size_t IndAbGroup::generators(size_t stage) const {
    if (stage >= stage_gens_.size()) throw InsufficientStages("stage not materialized");
    return stage_gens_[stage];
}

const IntMat& IndAbGroup::connecting_map(size_t stage) const {
    if (stage >= maps_.size()) throw InsufficientStages("stage not materialized");
    return maps_[stage];
}

IntMat IndAbGroup::composite(size_t s) const {
    if (s >= stage_gens_.size()) throw InsufficientStages("stage not materialized");
    IntMat acc = identity_mat(stage_gens_[0]);
    for (size_t t = 0; t < s; ++t) acc = mat_mul(maps_[t], acc);
    return acc;
}

size_t IndAbGroup::image_rank(size_t s) const { return mat_rank(composite(s)); }

bool IndAbGroup::stage_torsion_free(size_t s) const {
    // Classes of the colimit truncated at stage s live inside the stage-s
    // group: if n*x = 0 in the truncation, a representative of x is killed
    // outright by the composite into stage s, which is a free group.  So the
    // truncation is torsion-free exactly because the stage presentation is;
    // materialize the stage and certify that.
    return AbGroup::free(generators(s)).is_free();
}

std::optional<size_t> IndAbGroup::divisibility_witness(const std::vector<Int>& x, const Int& n) const {
    std::vector<Int> img = x;  // image at the current stage, advanced in place
    for (size_t s = 0; s < stage_gens_.size(); ++s) {
        bool ok = true;
        for (auto& c : img)
            if (c % n != 0) {
                ok = false;
                break;
            }
        if (ok) return s;
        if (s < maps_.size()) img = mat_apply(maps_[s], img);
    }
    return std::nullopt;
}

std::vector<long long> first_primes(size_t count) {
    std::vector<long long> out;
    for (long long p = 2; out.size() < count; ++p)
        if (is_prime(p)) out.push_back(p);
    return out;
}

std::vector<long long> round_robin_primes(size_t stages) {
    // 2; 2,3; 2,3,5; ... truncated to the requested length
    std::vector<long long> out;
    size_t round = 1;
    while (out.size() < stages) {
        auto ps = first_primes(round);
        for (long long p : ps) {
            if (out.size() == stages) break;
            out.push_back(p);
        }
        ++round;
    }
    return out;
}

IndAbGroup bunce_deddens_system(size_t stages) {
    auto mults = round_robin_primes(stages);
    std::vector<size_t> gens(stages + 1, 1);
    std::vector<IntMat> maps;
    for (long long m : mults) maps.push_back({{Int(m)}});
    return IndAbGroup(gens, maps);
}

IndAbGroup constant_system(size_t stages) {
    std::vector<size_t> gens(stages + 1, 1);
    std::vector<IntMat> maps(stages, IntMat{{1}});
    return IndAbGroup(gens, maps);
}

IndAbGroup fprime_system(const std::vector<long long>& primes) {
    std::vector<size_t> gens(primes.size() + 1, 3);
    std::vector<IntMat> maps;
    for (long long p : primes) maps.push_back(dihedral_k0_matrix(p));
    return IndAbGroup(gens, maps);
}

// ---------------------------------------------------------------------------
// Dihedral matrices and the shift embedding

bool is_prime(long long p) {
    if (p < 2) return false;
    for (long long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

IntMat dihedral_k0_matrix(long long p) {
    if (!is_prime(p)) throw NotPrime("dihedral transition matrix needs a prime");
    if (p == 2) return {{2, 1, 0}, {0, 0, 1}, {0, 0, 1}};
    Int h = (p - 1) / 2;
    return {{p, h, h}, {0, 1, 0}, {0, 0, 1}};
}

LaurentPoly laurent_mono(long long exp, Int coeff) {
    LaurentPoly p;
    if (coeff != 0) p[exp] = std::move(coeff);
    return p;
}

LaurentPoly laurent_add(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out = a;
    for (auto& [e, c] : b) {
        out[e] += c;
        if (out[e] == 0) out.erase(e);
    }
    return out;
}

LaurentPoly laurent_mul(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out;
    for (auto& [ea, ca] : a)
        for (auto& [eb, cb] : b) {
            out[ea + eb] += ca * cb;
            if (out[ea + eb] == 0) out.erase(ea + eb);
        }
    return out;
}

LaurentPoly laurent_star(const LaurentPoly& a) {
    LaurentPoly out;
    for (auto& [e, c] : a) out[-e] = c;
    return out;
}

bool laurent_is_zero(const LaurentPoly& a) { return a.empty(); }

LaurentMatrix LaurentMatrix::identity(size_t k) {
    LaurentMatrix m;
    m.entries.assign(k, std::vector<LaurentPoly>(k));
    for (size_t i = 0; i < k; ++i) m.entries[i][i] = laurent_mono(0);
    return m;
}

LaurentMatrix LaurentMatrix::shift_embedding(size_t k) {
    LaurentMatrix m;
    m.entries.assign(k, std::vector<LaurentPoly>(k));
    if (k == 1) {
        m.entries[0][0] = laurent_mono(1);
        return m;
    }
    m.entries[0][k - 1] = laurent_mono(1);  // z in the corner
    for (size_t i = 1; i < k; ++i) m.entries[i][i - 1] = laurent_mono(0);
    return m;
}

LaurentMatrix LaurentMatrix::operator*(const LaurentMatrix& o) const {
    size_t k = size();
    LaurentMatrix out;
    out.entries.assign(k, std::vector<LaurentPoly>(k));
    for (size_t i = 0; i < k; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (entries[i][l].empty()) continue;
            for (size_t j = 0; j < k; ++j) {
                if (o.entries[l][j].empty()) continue;
                out.entries[i][j] = laurent_add(out.entries[i][j], laurent_mul(entries[i][l], o.entries[l][j]));
            }
        }
    return out;
}

LaurentMatrix LaurentMatrix::adjoint() const {
    size_t k = size();
    LaurentMatrix out;
    out.entries.assign(k, std::vector<LaurentPoly>(k));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) out.entries[j][i] = laurent_star(entries[i][j]);
    return out;
}

bool LaurentMatrix::operator==(const LaurentMatrix& o) const { return entries == o.entries; }

bool LaurentMatrix::is_unitary() const {
    size_t k = size();
    return *this * adjoint() == identity(k) && adjoint() * *this == identity(k);
}

LaurentPoly LaurentMatrix::monomial_determinant() const {
    size_t k = size();
    std::vector<size_t> perm(k, k);
    LaurentPoly prod = laurent_mono(0);
    for (size_t i = 0; i < k; ++i) {
        size_t nonzero = k;
        for (size_t j = 0; j < k; ++j) {
            if (entries[i][j].empty()) continue;
            if (nonzero != k) throw std::invalid_argument("not a monomial matrix");
            nonzero = j;
        }
        if (nonzero == k) return {};
        if (entries[i][nonzero].size() != 1) throw std::invalid_argument("entry is not a monomial");
        perm[i] = nonzero;
        prod = laurent_mul(prod, entries[i][nonzero]);
    }
    // parity of the permutation
    int sign = 1;
    std::vector<bool> seen(k, false);
    for (size_t i = 0; i < k; ++i) {
        if (seen[i]) continue;
        size_t len = 0, j = i;
        while (!seen[j]) {
            seen[j] = true;
            j = perm[j];
            ++len;
        }
        if (len % 2 == 0) sign = -sign;
    }
    if (sign < 0)
        for (auto& [e, c] : prod) c = -c;
    return prod;
}

bool shift_embedding_check(size_t k) {
    if (k < 1) return false;
    LaurentMatrix v = LaurentMatrix::shift_embedding(k);
    if (!v.is_unitary()) return false;
    LaurentMatrix power = LaurentMatrix::identity(k);
    for (size_t i = 0; i < k; ++i) power = power * v;
    LaurentMatrix target = LaurentMatrix::identity(k);
    for (size_t i = 0; i < k; ++i) target.entries[i][i] = laurent_mono(1);
    return power == target;
}

}  // namespace axb
