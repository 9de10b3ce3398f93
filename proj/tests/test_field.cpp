#include <doctest.h>

#include <random>

#include "ssp4/errors.hpp"
#include "ssp4/field.hpp"

using namespace ssp4;

namespace {

FieldElement fp(std::uint64_t p, std::int64_t v) { return FieldElement(FieldDesc::get(p, 1), v); }

// smallest non-residue mod p by brute force
std::uint64_t brute_nonresidue(std::uint64_t p)
{
    for (std::uint64_t c = 1; c < p; ++c) {
        bool square = false;
        for (std::uint64_t x = 0; x < p; ++x)
            if (x * x % p == c)
                square = true;
        if (!square)
            return c;
    }
    return 0;
}

} // namespace

TEST_CASE("prime field examples")
{
    CHECK(fp(19, 2).inv() == fp(19, 10));
    CHECK(fp(19, 2).pow(18).is_one());
    CHECK(*sqrt(fp(19, 5)) == fp(19, 9));
    CHECK_FALSE(sqrt(fp(19, -1)).has_value());
    CHECK_THROWS_AS(fp(19, 0).inv(), DivisionByZero);
    CHECK_THROWS_AS(fp(19, 1) + fp(23, 1), FieldMismatch);
    CHECK_THROWS_AS(FieldDesc::get(21, 1), InvalidPrime);
    CHECK_THROWS_AS(FieldDesc::get(19, 3), InvalidDegree);
}

TEST_CASE("quadratic step squares to the tower constant")
{
    const auto& f = FieldDesc::get(7, 2);
    const std::uint64_t c = brute_nonresidue(7);
    CHECK(f.tower_constant(0)[0] == c);
    const std::uint64_t t[] = {0, 1};
    auto g = FieldElement::from_coords(f, t);
    auto sq = g * g;
    CHECK(sq.coord(0) == c);
    CHECK(sq.coord(1) == 0);
}

TEST_CASE("sqrt(-1) in F_{19^2}")
{
    const auto& f = FieldDesc::get(19, 2);
    auto m1 = FieldElement(f, -1);
    auto r = sqrt(m1);
    REQUIRE(r.has_value());
    CHECK(*r * *r == m1);
}

TEST_CASE("sqrt agrees with an exhaustive squaring oracle")
{
    for (auto [p, k] : {std::pair{19ull, 1u}, {7ull, 2u}, {5ull, 4u}, {11ull, 2u}}) {
        const auto& f = FieldDesc::get(p, k);
        std::uint64_t q = 1;
        for (unsigned i = 0; i < k; ++i)
            q *= p;
        std::vector<int> has_root(q, 0);
        for (std::uint64_t i = 0; i < q; ++i) {
            auto x = FieldElement::from_index(f, i);
            has_root[(x * x).index()] = 1;
        }
        for (std::uint64_t i = 0; i < q; ++i) {
            auto x = FieldElement::from_index(f, i);
            auto r = sqrt(x);
            CHECK(r.has_value() == static_cast<bool>(has_root[i]));
            CHECK(is_square(x) == static_cast<bool>(has_root[i]));
            if (r) {
                CHECK(*r * *r == x);
                CHECK(*r <= -*r);
            }
        }
    }
}

TEST_CASE("tower constants are non-squares")
{
    for (std::uint64_t p : {5ull, 7ull, 13ull, 31ull, 499ull}) {
        const auto& top = FieldDesc::get(p, 16);
        for (unsigned i = 0; i < kMaxLevel; ++i) {
            const auto& below = top.subfield(1u << i);
            auto c = FieldElement::from_coords(below, top.tower_constant(i));
            CHECK_FALSE(is_square(c));
        }
    }
}

TEST_CASE("inverse agrees with exhaustive search")
{
    const auto& f = FieldDesc::get(5, 4);
    for (std::uint64_t i = 1; i < 625; i += 7) {
        auto x = FieldElement::from_index(f, i);
        CHECK((x * x.inv()).is_one());
    }
}

TEST_CASE("field axioms and embeddings on random elements")
{
    std::mt19937_64 rng(1);
    for (std::uint64_t p : {7ull, 19ull, 1000003ull}) {
        for (unsigned k : {1u, 2u, 4u, 8u, 16u}) {
            const auto& f = FieldDesc::get(p, k);
            const auto& big = FieldDesc::get(p, 16);
            for (int it = 0; it < 20; ++it) {
                auto x = FieldElement::random(f, rng), y = FieldElement::random(f, rng),
                     z = FieldElement::random(f, rng);
                CHECK((x * y) * z == x * (y * z));
                CHECK(x * y == y * x);
                CHECK(x * (y + z) == x * y + x * z);
                CHECK((x - y) + y == x);
                CHECK((x * y).embed(big) == x.embed(big) * y.embed(big));
                CHECK((x + y).embed(big) == x.embed(big) + y.embed(big));
                CHECK(x.embed(big).restrict_to(f).value() == x);
                if (!x.is_zero()) {
                    CHECK((x / x).is_one());
                    CHECK(x.inv().embed(big) == x.embed(big).inv());
                }
                auto s = sqrt(x * x);
                REQUIRE(s.has_value());
                CHECK((*s == x || *s == -x));
                CHECK(frobenius(x * y, 1) == frobenius(x, 1) * frobenius(y, 1));
                CHECK(frobenius(x, k) == x);
                CHECK(FieldElement::parse(x.to_string()) == x);
            }
        }
    }
}

TEST_CASE("frobenius and subfields")
{
    const auto& f8 = FieldDesc::get(13, 8);
    CHECK(in_subfield(FieldElement::one(f8), 1));
    std::uint64_t g[8] = {0, 0, 0, 0, 1, 0, 0, 0};
    auto t3 = FieldElement::from_coords(f8, g);
    CHECK_FALSE(in_subfield(t3, 4));
    CHECK(in_subfield(t3, 8));
    CHECK_THROWS_AS(in_subfield(t3, 3), InvalidDegree);
    auto x = fp(13, 5);
    CHECK(frobenius(x, 1) == x);
    std::mt19937_64 rng(3);
    const auto& f4 = FieldDesc::get(13, 4);
    auto y = FieldElement::random(f4, rng).embed(f8);
    CHECK(in_subfield(y, 4));
    auto z = FieldElement::random(FieldDesc::get(13, 2), rng);
    CHECK(in_subfield(z.embed(f8), 2));
}

TEST_CASE("order bits")
{
    const auto& f = FieldDesc::get(7, 2);
    auto bits = f.order_bits();
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < bits.size(); ++i)
        v |= static_cast<std::uint64_t>(bits[i]) << i;
    CHECK(v == 49);
    bits = f.half_unit_order_bits();
    v = 0;
    for (std::size_t i = 0; i < bits.size(); ++i)
        v |= static_cast<std::uint64_t>(bits[i]) << i;
    CHECK(v == 24);
}

TEST_CASE("element parse errors")
{
    CHECK_THROWS_AS(FieldElement::parse("19^1:[20]"), ParseError);
    CHECK_THROWS_AS(FieldElement::parse("19^2:[1]"), ParseError);
    CHECK_THROWS_AS(FieldElement::parse("garbage"), ParseError);
    CHECK(FieldElement::parse("19^2:[3,4]").to_string() == "19^2:[3,4]");
}
