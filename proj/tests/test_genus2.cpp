#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <random>
#include <set>

#include "ssp4/cartier.hpp"
#include "ssp4/errors.hpp"
#include "ssp4/genus2.hpp"
#include "oracles.hpp"

using namespace ssp4;

namespace {

std::set<std::array<std::uint64_t, 3>> as_index_sets(const std::vector<RosenhainTriple>& ts)
{
    std::set<std::array<std::uint64_t, 3>> out;
    for (const auto& t : ts) {
        std::array<std::uint64_t, 3> a{t.lambda.index(), t.mu.index(), t.nu.index()};
        out.insert(a);
    }
    return out;
}

RosenhainTriple triple(const FieldDesc& f, std::int64_t a, std::int64_t b, std::int64_t c)
{
    return {FieldElement(f, a), FieldElement(f, b), FieldElement(f, c)};
}

} // namespace

TEST_CASE("enumerate_rosenhain equals the exhaustive oracle")
{
    for (std::uint64_t p : {7u, 11u, 13u}) {
        oracle::Rosenhain o(p);
        REQUIRE(o.c == FieldDesc::get(p, 2).tower_constant(0)[0]);
        const auto expected = oracle::rosenhain_triples(p);
        const auto kernel = enumerate_rosenhain(p);
        CHECK_MESSAGE(as_index_sets(kernel) == expected, "p=" << p);
        CHECK(kernel.size() == expected.size());
        CHECK(std::is_sorted(kernel.begin(), kernel.end()));
        const auto ref = enumerate_rosenhain(p, Backend::Reference);
        CHECK(ref == kernel);
        CHECK(!kernel.empty());
    }
}

TEST_CASE("rosenhain_superspecial")
{
    const auto& f19 = FieldDesc::get(19, 1);
    oracle::Rosenhain o19(19);
    CHECK(rosenhain_superspecial(triple(f19, 2, 3, 4)) == o19.superspecial(2, 3, 4));

    // random triples at p = 7 against the oracle, inside F_49
    const auto& f49 = FieldDesc::get(7, 2);
    oracle::Rosenhain o7(7);
    std::mt19937_64 rng(5);
    for (int it = 0; it < 300; ++it) {
        std::uint64_t v[3];
        do {
            for (auto& x : v)
                x = 2 + rng() % 47;
        } while (v[0] == v[1] || v[1] == v[2] || v[0] == v[2]);
        RosenhainTriple t{FieldElement::from_index(f49, v[0]), FieldElement::from_index(f49, v[1]),
                          FieldElement::from_index(f49, v[2])};
        CHECK(rosenhain_superspecial(t) == o7.superspecial(v[0], v[1], v[2]));
    }

    const auto ts = enumerate_rosenhain(19);
    REQUIRE(!ts.empty());
    for (std::size_t i = 0; i < ts.size(); i += 17)
        CHECK(rosenhain_superspecial(ts[i]));

    CHECK_THROWS_AS(rosenhain_superspecial(triple(f19, 1, 3, 4)), InvalidTriple);
    CHECK_THROWS_AS(rosenhain_superspecial(triple(f19, 0, 3, 4)), InvalidTriple);
    CHECK_THROWS_AS(rosenhain_superspecial(triple(f19, 3, 3, 4)), InvalidTriple);
    CHECK_THROWS_AS(enumerate_rosenhain(9), InvalidPrime);
}

TEST_CASE("relabelings")
{
    const auto& f = FieldDesc::get(23, 2);
    std::mt19937_64 rng(11);
    for (int it = 0; it < 20; ++it) {
        RosenhainTriple t;
        do
            t = {FieldElement::random(f, rng), FieldElement::random(f, rng), FieldElement::random(f, rng)};
        while (!t.valid());
        const auto rs = relabelings(t);
        REQUIRE(rs.size() == 120);

        // identity: 0, 1, inf to 0, 1, inf
        const auto id = std::find_if(rs.begin(), rs.end(), [](const Relabeling& r) {
            return r.chosen == std::array<std::uint8_t, 3>{0, 1, 2};
        });
        REQUIRE(id != rs.end());
        CHECK(id->triple == t);
        CHECK(id->shared_count() == 3);

        // (inf, l1, 0, 1, l2, l3) -> (l1, l1/l2, l1/l3)
        const auto sw = std::find_if(rs.begin(), rs.end(), [](const Relabeling& r) {
            return r.chosen == std::array<std::uint8_t, 3>{2, 3, 0};
        });
        REQUIRE(sw != rs.end());
        const RosenhainTriple want{t.lambda, t.lambda / t.mu, t.lambda / t.nu};
        CHECK(sw->triple == want);
        CHECK(rosenhain_isomorphic(t, want));
        CHECK(rosenhain_isomorphic(want, t));
        CHECK(rosenhain_isomorphic(t, t));

        for (const auto& r : rs) {
            CHECK(r.triple.valid());
            CHECK(class_representative(r.triple) == class_representative(t));
            unsigned shared = 0;
            for (const auto& x : r.triple.values()) {
                const auto v = t.values();
                shared += std::find(v.begin(), v.end(), x) != v.end();
            }
            CHECK(shared == r.shared_count());
        }

        // superspeciality is a class invariant
        const bool ss = rosenhain_superspecial(t);
        for (std::size_t i = 0; i < rs.size(); i += 13)
            CHECK(rosenhain_superspecial(rs[i].triple) == ss);
    }

    CHECK_THROWS_AS(relabelings(triple(FieldDesc::get(23, 1), 2, 2, 5)), InvalidTriple);
    CHECK_THROWS_AS(rosenhain_isomorphic(triple(FieldDesc::get(23, 1), 2, 3, 5), triple(FieldDesc::get(29, 1), 2, 3, 5)),
                    PrimeMismatch);
}

TEST_CASE("rosenhain_isomorphic rejects disjoint orbits")
{
    const auto& f = FieldDesc::get(29, 2);
    std::mt19937_64 rng(3);
    int checked = 0;
    while (checked < 20) {
        RosenhainTriple a, b;
        do
            a = {FieldElement::random(f, rng), FieldElement::random(f, rng), FieldElement::random(f, rng)};
        while (!a.valid());
        do
            b = {FieldElement::random(f, rng), FieldElement::random(f, rng), FieldElement::random(f, rng)};
        while (!b.valid());
        std::set<RosenhainTriple> orbit;
        for (const auto& r : relabelings(a))
            orbit.insert(r.triple.sorted());
        if (orbit.count(b.sorted()))
            continue;
        CHECK_FALSE(rosenhain_isomorphic(a, b));
        CHECK_FALSE(rosenhain_isomorphic(b, a));
        ++checked;
    }
}

TEST_CASE("enumeration is closed under relabeling and F_{p^2}-rational")
{
    for (std::uint64_t p : {19u, 23u}) {
        const auto ts = enumerate_rosenhain(p);
        const auto& f2 = FieldDesc::get(p, 2);
        std::set<RosenhainTriple> all(ts.begin(), ts.end());
        CHECK(all.size() == ts.size());
        bool closed = true;
        for (const auto& t : ts) {
            CHECK(&t.lambda.field() == &f2);
            for (const auto& r : relabelings(t))
                closed = closed && all.count(r.triple);
        }
        CHECK_MESSAGE(closed, "p=" << p);

        const auto classes = rosenhain_classes(ts);
        std::size_t covered = 0;
        for (const auto& c : classes) {
            std::set<RosenhainTriple> orbit;
            for (const auto& r : relabelings(c)) {
                auto v = r.triple.values();
                std::sort(v.begin(), v.end());
                do
                    orbit.insert({v[0], v[1], v[2]});
                while (std::next_permutation(v.begin(), v.end()));
            }
            covered += orbit.size();
        }
        CHECK(covered == ts.size());
    }
}

TEST_CASE("same lambda, mu with a second nu is rare")
{
    // Sampled: an exact count over all (p^2)^3 triples is out of reach.
    constexpr double K = 20;
    for (std::uint64_t p : {19u, 23u, 29u}) {
        const auto& f = FieldDesc::get(p, 2);
        std::mt19937_64 rng(p);
        const int samples = 6000;
        int hits = 0;
        for (int it = 0; it < samples; ++it) {
            RosenhainTriple t;
            do
                t = {FieldElement::random(f, rng), FieldElement::random(f, rng), FieldElement::random(f, rng)};
            while (!t.valid());
            bool hit = false;
            for (const auto& r : relabelings(t)) {
                const auto v = r.triple.values();
                const bool l = std::find(v.begin(), v.end(), t.lambda) != v.end();
                const bool m = std::find(v.begin(), v.end(), t.mu) != v.end();
                const bool n = std::find(v.begin(), v.end(), t.nu) != v.end();
                if (l && m && !n) {
                    hit = true;
                    break;
                }
            }
            hits += hit;
        }
        const double frac = static_cast<double>(hits) / samples;
        MESSAGE("p=" << p << " fraction=" << frac << " p^2*fraction=" << frac * p * p);
        CHECK(frac <= K / static_cast<double>(p * p));
    }
}

TEST_CASE("rosenhain cache round trip")
{
    const auto dir = std::filesystem::temp_directory_path() / "ssp4_cache_test";
    std::filesystem::remove_all(dir);
    const auto first = enumerate_rosenhain_cached(13, dir);
    const auto file = dir / "rosenhain_p13.txt";
    REQUIRE(std::filesystem::exists(file));
    const auto loaded = load_rosenhain_cache(file, 13);
    REQUIRE(loaded.has_value());
    CHECK(*loaded == first);
    CHECK(enumerate_rosenhain_cached(13, dir) == first);
    CHECK_FALSE(load_rosenhain_cache(file, 11).has_value());
    CHECK_FALSE(load_rosenhain_cache(dir / "missing.txt", 13).has_value());
    std::filesystem::remove_all(dir);
}
