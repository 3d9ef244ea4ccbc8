#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "axb/profinite.hpp"
#include "helpers.hpp"

using namespace axb;

namespace {

// Independent oracle: intersect congruence classes by enumerating residues
// modulo the lcm.
std::optional<CylinderSet> intersect_by_enumeration(const CylinderSet& a, const CylinderSet& b) {
    long long l = lcm_ll(a.modulus, b.modulus);
    std::set<long long> hits;
    for (long long k = 0; k < l; ++k)
        if (k % a.modulus == a.residue && k % b.modulus == b.residue) hits.insert(k);
    if (hits.empty()) return std::nullopt;
    REQUIRE(hits.size() == 1);
    return CylinderSet(l, *hits.begin());
}

}  // namespace

TEST_CASE("cylinder intersections") {
    CHECK(cylinder_intersect({2, 0}, {3, 0}) == CylinderSet(6, 0));
    CHECK(cylinder_intersect({2, 1}, {2, 1}) == CylinderSet(2, 1));
    CHECK(!cylinder_intersect({2, 1}, {4, 0}).has_value());

    axb::testing::Rng rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        long long m1 = axb::testing::rand_range(rng, 1, 30);
        long long m2 = axb::testing::rand_range(rng, 1, 30);
        CylinderSet a(m1, axb::testing::rand_range(rng, 0, m1 - 1));
        CylinderSet b(m2, axb::testing::rand_range(rng, 0, m2 - 1));
        CHECK(cylinder_intersect(a, b) == intersect_by_enumeration(a, b));
    }
}

TEST_CASE("cylinder measures") {
    CHECK(cylinder_measure(CylinderSet(5, 0)) == Rational(1, 5));
    CHECK(cylinder_measure(CylinderSet(1, 0)) == 1);
    CHECK(cylinder_measure(cylinder_intersect({2, 1}, {3, 0})) == Rational(1, 6));
    CHECK(cylinder_measure(std::nullopt) == 0);

    // measure * lcm is 0 or 1
    axb::testing::Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        long long m1 = axb::testing::rand_range(rng, 1, 40);
        long long m2 = axb::testing::rand_range(rng, 1, 40);
        CylinderSet a(m1, axb::testing::rand_range(rng, 0, m1 - 1));
        CylinderSet b(m2, axb::testing::rand_range(rng, 0, m2 - 1));
        Rational scaled = cylinder_measure(cylinder_intersect(a, b)) * lcm_ll(m1, m2);
        CHECK((scaled == 0 || scaled == 1));
    }
}

TEST_CASE("congruence class density in a window") {
    // small windows against direct enumeration
    for (long long n = 1; n <= 7; ++n)
        for (long long r = 0; r < n; ++r)
            for (long long W : {1, 5, 23}) {
                long long brute = 0;
                for (long long k = -W; k <= W; ++k)
                    if (((k - r) % n + n) % n == 0) ++brute;
                CHECK(count_congruent_in_window(r, n, W) == brute);
            }

    // natural density approaches 1/n
    const long long W = 1000000;
    for (long long n = 1; n <= 100; ++n) {
        Rational density(count_congruent_in_window(n / 2, n, W), 2 * W + 1);
        Rational err = density - Rational(1, n);
        if (err < 0) err = -err;
        CHECK(err < Rational(1, 1000));
    }
}

TEST_CASE("profinite residue towers") {
    ProfiniteInteger x = ProfiniteInteger::from_integer(7, {{2, 3}, {3, 2}});
    CHECK(x.residue(2) == 7);
    CHECK(x.residue(3) == 7);
    CHECK(x.level(2) == 3);

    SUBCASE("precision of sums and products is the minimum") {
        ProfiniteInteger y = ProfiniteInteger::from_integer(5, {{2, 1}, {5, 2}});
        ProfiniteInteger s = x + y;
        CHECK(s.level(2) == 1);
        CHECK(!s.tracks(3));
        CHECK(!s.tracks(5));
        CHECK(s.residue(2) == (7 + 5) % 2);
        ProfiniteInteger p = x * y;
        CHECK(p.level(2) == 1);
        CHECK(p.residue(2) == (7 * 5) % 2);
    }

    SUBCASE("mul_n raises precision by the valuation") {
        ProfiniteInteger one = ProfiniteInteger::from_integer(1, {{2, 1}});
        ProfiniteInteger doubled = mul_n(2, one);
        CHECK(doubled.level(2) == 2);
        CHECK(doubled.residue(2) == 2);
        CHECK(mul_n(1, x).residue(2) == x.residue(2));
        // untracked prime gains exactly its valuation
        ProfiniteInteger scaled = mul_n(12, one);
        CHECK(scaled.level(2) == 3);
        CHECK(scaled.level(3) == 1);
        CHECK(scaled.residue(3) == 0);
    }

    SUBCASE("image of the full cylinder under mul_n") {
        for (long long n = 1; n <= 100; ++n) {
            CylinderSet image = cylinder_scale(n, CylinderSet(1, 0));
            CHECK(image == CylinderSet(n, 0));
            CHECK(cylinder_measure(image) == Rational(1, n));
        }
    }
}

TEST_CASE("adele canonical form and serialization") {
    FiniteAdele a = FiniteAdele::parse("1/3 + [2^3: 5, 3^2: 7]");
    CHECK(a.to_string() == "1/3 + [2^3: 5, 3^2: 7]");
    CHECK(!a.is_integral());

    FiniteAdele b = FiniteAdele::parse("0 + [2^2: 3]");
    CHECK(b.is_integral());

    // integer part of the shift is absorbed into the residues
    FiniteAdele c(ProfiniteInteger::from_integer(0, {{2, 2}}), Rational(7, 2));
    CHECK(c.shift() == Rational(1, 2));
    CHECK(c.integral_part().residue(2) == 3);

    CHECK_THROWS_AS(FiniteAdele::parse("1/3 + [4^2: 1]"), ParseError);
    CHECK_THROWS_AS(FiniteAdele::parse("nonsense"), ParseError);

    axb::testing::Rng rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        ProfiniteInteger part;
        part.set(2, static_cast<int>(axb::testing::rand_range(rng, 1, 5)), axb::testing::rand_range(rng, 0, 31));
        part.set(5, 2, axb::testing::rand_range(rng, 0, 24));
        FiniteAdele x(part, Rational(axb::testing::rand_range(rng, -20, 20), axb::testing::rand_range(rng, 1, 9)));
        FiniteAdele back = FiniteAdele::parse(x.to_string());
        CHECK(back.agrees_with(x));
        CHECK(back.to_string() == x.to_string());
    }
}

TEST_CASE("ax+b action on adeles") {
    SUBCASE("identity") {
        FiniteAdele x = FiniteAdele::parse("1/3 + [2^3: 5, 3^2: 7]");
        CHECK(axb_act(AxbElement(1, 0), x).agrees_with(x));
    }

    SUBCASE("g = (2,1) on x = 3 mod 8") {
        FiniteAdele x(ProfiniteInteger::from_integer(3, {{2, 3}}), 0);
        FiniteAdele y = axb_act(AxbElement(2, 1), x);
        CHECK(y.integral_part().level(2) == 4);
        CHECK(y.integral_part().residue(2) == 7);
        CHECK(y.shift() == 0);
    }

    SUBCASE("division reduces precision and can move mass into the shift") {
        FiniteAdele x(ProfiniteInteger::from_integer(6, {{2, 4}, {3, 2}}), 0);
        FiniteAdele y = axb_act(AxbElement(Rational(3, 2), 1), x);
        // 3/2 * 6 + 1 = 10
        CHECK(y.integral_part().level(2) == 3);
        CHECK(y.integral_part().level(3) == 3);
        CHECK(y.agrees_with(embed_rational(10, {2, 3}, 2)));
    }

    SUBCASE("insufficient precision is a hard error") {
        FiniteAdele x(ProfiniteInteger::from_integer(1, {{2, 1}}), 0);
        CHECK_THROWS_AS(axb_act(AxbElement(Rational(1, 3), 0), x), InsufficientPrecision);
        CHECK_THROWS_AS(axb_act(AxbElement(Rational(1, 4), 0), x), InsufficientPrecision);
    }

    SUBCASE("group law against the rational diagonal") {
        axb::testing::Rng rng(17);
        std::vector<long long> primes{2, 3, 5, 7};
        for (int trial = 0; trial < 300; ++trial) {
            // multiplier denominators stay supported on the tracked primes
            static const long long smooth[] = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12};
            auto rand_mult = [&] {
                Rational q(axb::testing::rand_range(rng, -12, 12), smooth[axb::testing::rand_range(rng, 0, 10)]);
                return q == 0 ? Rational(1) : q;
            };
            auto rand_shift = [&] {
                return Rational(axb::testing::rand_range(rng, -12, 12), axb::testing::rand_range(rng, 1, 12));
            };
            AxbElement g(rand_mult(), rand_shift());
            AxbElement h(rand_mult(), rand_shift());
            Rational q = rand_shift();
            FiniteAdele x = embed_rational(q, primes, 12);
            FiniteAdele lhs = axb_act(g, axb_act(h, x));
            FiniteAdele rhs = axb_act(g * h, x);
            CHECK(lhs.agrees_with(rhs));
            // and both match the rational result
            Rational target = g.a * (h.a * q + h.b) + g.b;
            CHECK(lhs.shift() == fractional_part(target));
        }
    }

    SUBCASE("inverse composes to the identity") {
        AxbElement g(Rational(3, 2), Rational(-1, 5));
        CHECK(g * g.inverse() == AxbElement(1, 0));
        CHECK(g.inverse() * g == AxbElement(1, 0));
        // associativity of the group law
        AxbElement h(Rational(-2, 7), 4), k(Rational(5), Rational(1, 3));
        CHECK((g * h) * k == g * (h * k));
    }
}

TEST_CASE("Bost-Connes character covariance") {
    CHECK(bc_character_covariance(0, 1, 60));
    CHECK(bc_character_covariance(1, 2, 60));
    CHECK(bc_character_covariance(3, 8, 60));
    // exponents alternate 0,1 mod 2 for gamma = 1/2
    CHECK(bc_character_exponent(1, 2, 0) == 0);
    CHECK(bc_character_exponent(1, 2, 1) == 1);
    // increment by 3 mod 8 per unit translation for gamma = 3/8
    for (long long x = 0; x < 8; ++x)
        CHECK(bc_character_exponent(3, 8, x + 1) == (bc_character_exponent(3, 8, x) + 3) % 8);
    CHECK_THROWS(bc_character_covariance(1, 61, 60));
}
