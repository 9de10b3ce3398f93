#include "ssp4/iso4.hpp"

#include <algorithm>
#include <random>

#include "ssp4/errors.hpp"

namespace ssp4 {

namespace {

// Homogeneous coordinates (u : v) of a point.
struct Hom
{
    FieldElement u, v;
};

Hom hom(const P1Point& z, const FieldDesc& f)
{
    if (z.inf)
        return {FieldElement::one(f), FieldElement(f)};
    return {z.x.embed(f), FieldElement::one(f)};
}

FieldElement bracket(const Hom& a, const Hom& b) { return a.u * b.v - b.u * a.v; }

const FieldDesc& larger_of(const FieldDesc& a, const FieldDesc& b)
{
    if (a.p() != b.p())
        throw FieldMismatch("loci over different primes");
    return a.contains(b) ? a : b;
}

// Rows of the map sending (z1, z2, z3) to (0, 1, inf).
MobiusMap to_standard(const Hom& z1, const Hom& z2, const Hom& z3)
{
    const FieldElement k23 = bracket(z2, z3), k21 = bracket(z2, z1);
    if (k23.is_zero() || k21.is_zero() || bracket(z1, z3).is_zero())
        throw DegenerateTriple("triple has a repeated point");
    return MobiusMap(k23 * z1.v, -(k23 * z1.u), k21 * z3.v, -(k21 * z3.u));
}

} // namespace

BranchLocus branch_locus(const Poly& f, const FieldDesc& target)
{
    const int d = f.degree();
    if (d != 9 && d != 10)
        throw InvalidDegree("a genus-4 model needs degree 9 or 10, got " + std::to_string(d));
    if (!is_separable(f))
        throw NotSquareFree("branch locus of a model with a repeated root");
    std::mt19937_64 rng(0x5eed);
    const auto roots = roots_in(f, target, rng);
    if (roots.size() != static_cast<std::size_t>(d))
        throw RootsOutsideField("model does not split over F_{p^" + std::to_string(target.degree()) + "}");
    BranchLocus b;
    b.field = &target;
    for (const auto& r : roots)
        b.points.push_back(P1Point::finite(r));
    if (d == 9)
        b.points.push_back(P1Point::infinity(target));
    std::sort(b.points.begin(), b.points.end());
    return b;
}

MobiusMap::MobiusMap(FieldElement a, FieldElement b, FieldElement c, FieldElement d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d))
{
    if (det().is_zero())
        throw DegenerateTriple("singular Mobius matrix");
}

MobiusMap MobiusMap::identity(const FieldDesc& f)
{
    return MobiusMap(FieldElement::one(f), FieldElement(f), FieldElement(f), FieldElement::one(f));
}

P1Point MobiusMap::operator()(const P1Point& z) const
{
    const FieldDesc& f = z.inf ? a_.field() : larger_of(a_.field(), z.x.field());
    const Hom h = hom(z, f);
    const FieldElement num = a_.embed(f) * h.u + b_.embed(f) * h.v, den = c_.embed(f) * h.u + d_.embed(f) * h.v;
    if (den.is_zero())
        return P1Point::infinity(f);
    return P1Point::finite(num / den);
}

MobiusMap MobiusMap::after(const MobiusMap& g) const
{
    return MobiusMap(a_ * g.a_ + b_ * g.c_, a_ * g.b_ + b_ * g.d_, c_ * g.a_ + d_ * g.c_, c_ * g.b_ + d_ * g.d_);
}

MobiusMap MobiusMap::inverse() const { return MobiusMap(d_, -b_, -c_, a_); }

bool MobiusMap::same_as(const MobiusMap& o) const
{
    // proportional 2x2 matrices: all 2x2 minors of the stacked rows vanish
    const FieldElement m[4] = {a_, b_, c_, d_}, n[4] = {o.a_, o.b_, o.c_, o.d_};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (!(m[i] * n[j] - m[j] * n[i]).is_zero())
                return false;
    return true;
}

MobiusMap mobius_through(const std::array<P1Point, 3>& src, const std::array<P1Point, 3>& dst)
{
    const FieldDesc* f = &src[0].x.field();
    for (const auto& z : src)
        f = &larger_of(*f, z.x.field());
    for (const auto& z : dst)
        f = &larger_of(*f, z.x.field());
    const MobiusMap s = to_standard(hom(src[0], *f), hom(src[1], *f), hom(src[2], *f));
    const MobiusMap t = to_standard(hom(dst[0], *f), hom(dst[1], *f), hom(dst[2], *f));
    return t.inverse().after(s);
}

bool loci_equivalent(const BranchLocus& x, const BranchLocus& y)
{
    if (x.points.size() != y.points.size())
        return false;
    const FieldDesc& f = larger_of(*x.field, *y.field);
    std::vector<P1Point> xs, ys;
    for (const auto& z : x.points)
        xs.push_back(z.embed(f));
    for (const auto& z : y.points)
        ys.push_back(z.embed(f));
    std::sort(ys.begin(), ys.end());
    const std::size_t n = xs.size();
    const std::array<P1Point, 3> dst{ys[0], ys[1], ys[2]};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                if (i == j || j == k || i == k)
                    continue;
                const MobiusMap m = mobius_through({xs[i], xs[j], xs[k]}, dst);
                bool ok = true;
                for (std::size_t l = 0; l < n && ok; ++l) {
                    if (l == i || l == j || l == k)
                        continue;
                    ok = std::binary_search(ys.begin(), ys.end(), m(xs[l]));
                }
                if (ok)
                    return true;
            }
    return false;
}

bool hyperelliptic_iso(const Poly& f, const Poly& g, const FieldDesc& field)
{
    return loci_equivalent(branch_locus(f, field), branch_locus(g, field));
}

bool hyperelliptic_iso(const Poly& f, const Poly& g) { return hyperelliptic_iso(f, g, f.field().with_degree(8)); }

CanonicalKey canonical_key(const BranchLocus& locus)
{
    const FieldDesc& f = *locus.field;
    std::vector<Hom> h;
    for (const auto& z : locus.points)
        h.push_back(hom(z, f));
    const std::size_t n = h.size();
    CanonicalKey best, cur;
    std::vector<FieldElement> num, den, prefix;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                if (i == j || j == k || i == k)
                    continue;
                const MobiusMap m = to_standard(h[i], h[j], h[k]);
                num.clear();
                den.clear();
                for (std::size_t l = 0; l < n; ++l) {
                    if (l == i || l == j || l == k)
                        continue;
                    num.push_back(m.a() * h[l].u + m.b() * h[l].v);
                    den.push_back(m.c() * h[l].u + m.d() * h[l].v);
                }
                // batched inversion of the denominators
                prefix.assign(den.size() + 1, FieldElement::one(f));
                for (std::size_t l = 0; l < den.size(); ++l)
                    prefix[l + 1] = prefix[l] * den[l];
                FieldElement inv = prefix.back().inv();
                cur.assign(den.size(), FieldElement(f));
                for (std::size_t l = den.size(); l-- > 0;) {
                    cur[l] = num[l] * prefix[l] * inv;
                    inv *= den[l];
                }
                std::sort(cur.begin(), cur.end());
                if (best.empty() || cur < best)
                    best = cur;
            }
    return best;
}

} // namespace ssp4
