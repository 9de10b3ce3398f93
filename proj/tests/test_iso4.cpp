#include <doctest.h>

#include <random>

#include "ssp4/errors.hpp"
#include "ssp4/family_d8.hpp"
#include "ssp4/iso4.hpp"

using namespace ssp4;

namespace {

FieldElement random_unit(const FieldDesc& f, std::mt19937_64& rng)
{
    FieldElement x;
    do
        x = FieldElement::random(f, rng);
    while (x.is_zero());
    return x;
}

// y^2 = x(x^4-1)(x^4-l) or (x^5-1)(x^5-l), over the field of l
Poly lambda_model(LambdaKind kind, const FieldElement& l)
{
    const auto& fam = LambdaFamily::get(kind);
    return LambdaCurve{l.field().p(), kind, l, fam.generic}.model();
}

MobiusMap random_mobius(const FieldDesc& f, std::mt19937_64& rng)
{
    while (true) {
        FieldElement a = FieldElement::random(f, rng), b = FieldElement::random(f, rng), c = FieldElement::random(f, rng),
                     d = FieldElement::random(f, rng);
        if (!(a * d - b * c).is_zero())
            return MobiusMap(a, b, c, d);
    }
}

} // namespace

TEST_CASE("branch_locus")
{
    const auto& f17 = FieldDesc::get(17, 1);
    const auto& t17 = FieldDesc::get(17, 8);
    Poly x9x = Poly::from_ints(f17, {0, 1, 0, 0, 0, 0, 0, 0, 0, 1});
    auto b = branch_locus(x9x, t17);
    REQUIRE(b.points.size() == 10);
    CHECK(b.points.back().inf);
    CHECK(std::count_if(b.points.begin(), b.points.end(), [](const P1Point& z) { return !z.inf && z.x.is_zero(); }) == 1);

    std::mt19937_64 rng(1);
    const auto& f2 = FieldDesc::get(23, 2);
    for (int it = 0; it < 5; ++it) {
        FieldElement a = FieldElement::random(f2, rng), bb = FieldElement::random(f2, rng);
        Poly f = Poly(f2, {-FieldElement::one(f2), FieldElement(f2), FieldElement::one(f2)}) *
                 Poly(f2, {FieldElement::one(f2), FieldElement(f2), a, FieldElement(f2), FieldElement::one(f2)}) *
                 Poly(f2, {FieldElement::one(f2), FieldElement(f2), bb, FieldElement(f2), FieldElement::one(f2)});
        if (!is_separable(f))
            continue;
        auto loc = branch_locus(f, FieldDesc::get(23, 8));
        CHECK(loc.points.size() == 10);
        CHECK(std::none_of(loc.points.begin(), loc.points.end(), [](const P1Point& z) { return z.inf; }));
    }

    const auto& f7 = FieldDesc::get(7, 1);
    // (x-1)^2 (x^8 + 1)
    Poly sq = Poly::from_ints(f7, {1, -1}) * Poly::from_ints(f7, {1, -1}) * Poly::from_ints(f7, {1, 0, 0, 0, 0, 0, 0, 0, 1});
    CHECK_THROWS_AS(branch_locus(sq, FieldDesc::get(7, 8)), NotSquareFree);
    CHECK_THROWS_AS(branch_locus(Poly::from_ints(f7, {1, 0, 0, 0, 0, 0, 0, 0, 1}), FieldDesc::get(7, 8)), InvalidDegree);
    // x^10 - 3 over F_7: 3 is a primitive root, so x^10 = 3 has no root in F_7
    CHECK_THROWS_AS(branch_locus(Poly::from_ints(f7, {-3, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}), f7), RootsOutsideField);
}

TEST_CASE("mobius_through")
{
    const auto& f = FieldDesc::get(19, 2);
    const FieldElement zero(f), one = FieldElement::one(f);
    const P1Point Z = P1Point::finite(zero), O = P1Point::finite(one), I = P1Point::infinity(f);
    const P1Point M = P1Point::finite(-one);

    CHECK(mobius_through({Z, O, I}, {Z, O, I}).same_as(MobiusMap::identity(f)));

    const auto m = mobius_through({I, Z, O}, {O, M, Z});
    CHECK(m(I) == O);
    CHECK(m(Z) == M);
    CHECK(m(O) == Z);
    // this is x -> (x - 1) / (x + 1)
    CHECK(m.same_as(MobiusMap(one, -one, one, one)));

    std::mt19937_64 rng(2);
    for (int it = 0; it < 30; ++it) {
        std::array<P1Point, 3> a, b, c;
        for (auto* t : {&a, &b, &c}) {
            do
                for (auto& z : *t)
                    z = P1Point::finite(FieldElement::random(f, rng));
            while ((*t)[0] == (*t)[1] || (*t)[1] == (*t)[2] || (*t)[0] == (*t)[2]);
        }
        if (it % 3 == 0)
            a[1] = I;
        const auto ab = mobius_through(a, b), ca = mobius_through(c, a), cb = mobius_through(c, b);
        CHECK(ab.after(ca).same_as(cb));
        for (int i = 0; i < 3; ++i)
            CHECK(ab(a[i]) == b[i]);
        CHECK(ab.inverse().after(ab).same_as(MobiusMap::identity(f)));
    }
    CHECK_THROWS_AS(mobius_through({Z, Z, O}, {Z, O, I}), DegenerateTriple);
    CHECK_THROWS_AS(mobius_through({Z, O, I}, {I, O, I}), DegenerateTriple);
}

TEST_CASE("hyperelliptic_iso on random Mobius images")
{
    std::mt19937_64 rng(3);
    const auto& f2 = FieldDesc::get(23, 2);
    const auto& f8 = FieldDesc::get(23, 8);
    for (int it = 0; it < 8; ++it) {
        const auto l = random_unit(f2, rng);
        if (l.is_one())
            continue;
        const Poly f = lambda_model(LambdaKind::D8, l);
        const auto loc = branch_locus(f, f8);
        CHECK(hyperelliptic_iso(f, f));
        // image under a random map
        const auto m = random_mobius(f2, rng);
        BranchLocus img{&f8, {}};
        for (const auto& z : loc.points)
            img.points.push_back(m(z.embed(f8)));
        std::sort(img.points.begin(), img.points.end());
        CHECK(loci_equivalent(loc, img));
        CHECK(loci_equivalent(img, loc));
        CHECK(canonical_key(loc) == canonical_key(img));
    }
}

TEST_CASE("iso4 agrees with the lambda <-> 1/lambda rule")
{
    std::mt19937_64 rng(4);
    for (std::uint64_t p : {19u, 31u, 41u}) {
        const auto& f2 = FieldDesc::get(p, 2);
        const auto& f8 = FieldDesc::get(p, 8);
        for (LambdaKind kind : {LambdaKind::D8, LambdaKind::D10}) {
            // D10 needs a fifth power so that the branch points are in F_{p^8}
            auto draw = [&] {
                while (true) {
                    auto m = random_unit(f2, rng);
                    auto l = kind == LambdaKind::D10 ? m.pow(5) : m;
                    if (!l.is_one() && !(l * l).is_one())
                        return l;
                }
            };
            for (int it = 0; it < 50; ++it) {
                const auto l1 = draw();
                const auto l2 = it % 3 == 0 ? l1.inv() : draw();
                const bool expected = l1 == l2 || l1 == l2.inv();
                const Poly f = lambda_model(kind, l1), g = lambda_model(kind, l2);
                CHECK_MESSAGE(hyperelliptic_iso(f, g) == expected, "p=" << p << " it=" << it);
                const bool keys = canonical_key(branch_locus(f, f8)) == canonical_key(branch_locus(g, f8));
                CHECK(keys == expected);
            }
        }
    }
}

TEST_CASE("the two D8 classes at p = 487 are not isomorphic")
{
    std::mt19937_64 rng(5);
    const auto curves = d8_enumerate(487, rng);
    REQUIRE(curves.size() == 2);
    const auto& f16 = FieldDesc::get(487, 16);
    CHECK_FALSE(hyperelliptic_iso(curves[0].model(), curves[1].model(), f16));
    CHECK(hyperelliptic_iso(curves[0].model(), LambdaCurve{487, LambdaKind::D8, curves[0].lambda.inv(), AutGroup::D8}.model(),
                            f16));
}
