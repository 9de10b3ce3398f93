#include <doctest.h>

#include <random>

#include "ssp4/errors.hpp"
#include "ssp4/poly.hpp"

using namespace ssp4;

namespace {

Poly random_poly(const FieldDesc& f, int deg, std::mt19937_64& rng)
{
    std::vector<FieldElement> c;
    for (int i = 0; i <= deg; ++i)
        c.push_back(FieldElement::random(f, rng));
    return Poly(f, c);
}

} // namespace

TEST_CASE("small polynomial arithmetic")
{
    const auto& f = FieldDesc::get(7, 1);
    auto xp1 = Poly::from_ints(f, {1, 1});
    auto xm1 = Poly::from_ints(f, {-1, 1});
    CHECK(xp1 * xm1 == Poly::from_ints(f, {-1, 0, 1}));
    auto [q, r] = divrem(Poly::from_ints(f, {-1, 0, 1}), xm1);
    CHECK(q == xp1);
    CHECK(r.is_zero());
    CHECK(Poly::from_ints(f, {3, 2, 3}).eval(FieldElement(f, -1)) == FieldElement(f, 4));
    CHECK_THROWS_AS(divrem(xp1, Poly(f)), DivisionByZero);
}

TEST_CASE("gcd examples")
{
    const auto& f = FieldDesc::get(7, 1);
    CHECK(gcd(Poly::from_ints(f, {-1, 0, 1}), Poly::from_ints(f, {1, -2, 1})) == Poly::from_ints(f, {-1, 1}));
    CHECK(gcd(Poly::from_ints(f, {3, 2, 3}), Poly::from_ints(f, {4, 4})) == Poly::from_ints(f, {1}));
    auto g = Poly::from_ints(f, {2, 0, 3});
    CHECK(gcd(g, Poly(f)) == g.monic());
    CHECK_THROWS_AS(gcd(Poly(f), Poly(f)), BothZero);
}

TEST_CASE("separability")
{
    const auto& f = FieldDesc::get(7, 1);
    CHECK(is_separable(Poly::from_ints(f, {-1, 0, 1})));
    CHECK_FALSE(is_separable(Poly::from_ints(f, {1, -2, 1})));
    CHECK_THROWS_AS(is_separable(Poly(f)), ZeroPolynomial);
    // x^7 - x has vanishing derivative only after the x term: still separable
    CHECK(is_separable(Poly::from_ints(f, {0, -1, 0, 0, 0, 0, 0, 1})));
    // x^7 - 1 = (x - 1)^7
    CHECK_FALSE(is_separable(Poly::from_ints(f, {-1, 0, 0, 0, 0, 0, 0, 1})));
}

TEST_CASE("karatsuba agrees with schoolbook")
{
    std::mt19937_64 rng(5);
    for (unsigned k : {1u, 2u, 4u}) {
        const auto& f = FieldDesc::get(101, k);
        for (auto [da, db] : {std::pair{40, 40}, {100, 33}, {33, 150}, {70, 65}, {200, 199}}) {
            auto a = random_poly(f, da, rng), b = random_poly(f, db, rng);
            CHECK(a * b == mul_schoolbook(a, b));
        }
    }
}

TEST_CASE("divrem identity and gcd divides")
{
    std::mt19937_64 rng(6);
    const auto& f = FieldDesc::get(31, 2);
    for (int it = 0; it < 20; ++it) {
        auto a = random_poly(f, 12, rng), b = random_poly(f, 5, rng), c = random_poly(f, 3, rng);
        auto [q, r] = divrem(a, b);
        CHECK(q * b + r == a);
        CHECK(r.degree() < b.degree());
        auto g = gcd(a * c, b * c);
        CHECK(g.leading().is_one());
        CHECK((a * c % g).is_zero());
        CHECK((b * c % g).is_zero());
        CHECK((g % c.monic()).is_zero());
    }
}

TEST_CASE("power_coeffs examples")
{
    const auto& f7 = FieldDesc::get(7, 1);
    auto m = power_coeffs(Poly::from_ints(f7, {0, 1, 0, 1}), 3, {6});
    CHECK(m.at(6).is_zero());
    const auto& f5 = FieldDesc::get(5, 1);
    m = power_coeffs(Poly::from_ints(f5, {0, -1, 0, 0, 0, 1}), 2, {4, 3, 9, 8});
    for (auto& [d, v] : m)
        CHECK(v.is_zero());
    m = power_coeffs(Poly::from_ints(f5, {2, 3}), 0, {0});
    CHECK(m.at(0).is_one());
}

TEST_CASE("power_coeffs matches naive repeated multiplication")
{
    std::mt19937_64 rng(7);
    const auto& f = FieldDesc::get(13, 2);
    for (int deg = 1; deg <= 10; deg += 3) {
        auto base = random_poly(f, deg, rng);
        Poly naive = Poly::constant(FieldElement::one(f));
        for (unsigned e = 0; e <= 15; ++e) {
            std::set<unsigned> all;
            for (unsigned d = 0; d <= deg * e; ++d)
                all.insert(d);
            auto m = power_coeffs(base, e, all);
            for (unsigned d : all)
                CHECK(m.at(d) == naive.coeff(d));
            naive = mul_schoolbook(naive, base);
        }
    }
}

TEST_CASE("roots_in examples")
{
    std::mt19937_64 rng(0);
    const auto& f19 = FieldDesc::get(19, 1);
    auto r = roots_in(Poly::from_ints(f19, {-1, 0, 1}), f19, rng);
    REQUIRE(r.size() == 2);
    CHECK(r[0] == FieldElement(f19, 1));
    CHECK(r[1] == FieldElement(f19, 18));
    const std::uint64_t c = FieldDesc::get(19, 2).tower_constant(0)[0];
    auto q = Poly::from_ints(f19, {-static_cast<std::int64_t>(c), 0, 1});
    CHECK(roots_in(q, f19, rng).empty());
    auto r2 = roots_in(q, FieldDesc::get(19, 2), rng);
    CHECK(r2.size() == 2);
    CHECK_THROWS_AS(roots_in(Poly(f19), f19, rng), ZeroPolynomial);
}

TEST_CASE("roots_in on random split products")
{
    std::mt19937_64 rng(11);
    for (unsigned k : {1u, 2u, 4u}) {
        const auto& f = FieldDesc::get(23, k);
        const auto& top = FieldDesc::get(23, 8);
        std::vector<FieldElement> roots;
        Poly prod = Poly::constant(FieldElement::one(f));
        for (int i = 0; i < 6; ++i) {
            auto x = FieldElement::random(f, rng);
            if (std::find(roots.begin(), roots.end(), x) != roots.end())
                continue;
            roots.push_back(x);
            prod *= Poly::linear(x);
        }
        // an irreducible-over-f quadratic times the product
        for (;;) {
            auto c = FieldElement::random(f, rng);
            if (!is_square(c)) {
                prod *= Poly(f, {-c, FieldElement(f), FieldElement::one(f)});
                break;
            }
        }
        std::sort(roots.begin(), roots.end());
        auto got = roots_in(prod, f, rng);
        CHECK(got == roots);
        auto wide = roots_in(prod, top, rng);
        CHECK(wide.size() == roots.size() + 2);
        for (auto& w : wide)
            CHECK(prod.embed(top).eval(w).is_zero());
    }
}

TEST_CASE("roots_in ordering is reproducible for a fixed seed")
{
    const auto& f = FieldDesc::get(31, 1);
    auto g = Poly::from_ints(f, {0, -1, 0, 0, 0, 0, 0, 0, 1}); // x^8 - x
    std::mt19937_64 a(42), b(42);
    CHECK(roots_in(g, FieldDesc::get(31, 4), a) == roots_in(g, FieldDesc::get(31, 4), b));
}
