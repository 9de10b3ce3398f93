#pragma once

// Isomorphism of genus-4 hyperelliptic curves over the algebraic closure,
// decided by Mobius equivalence of their 10-point branch loci.

#include <array>
#include <compare>
#include <vector>

#include "ssp4/field.hpp"
#include "ssp4/poly.hpp"

namespace ssp4 {

/// A point of P^1 over a tower field; inf marks the point at infinity.
struct P1Point
{
    FieldElement x;
    bool inf = false;

    static P1Point finite(const FieldElement& v) { return {v, false}; }
    static P1Point infinity(const FieldDesc& f) { return {FieldElement(f), true}; }
    P1Point embed(const FieldDesc& larger) const { return {x.embed(larger), inf}; }

    /// Finite points first in the element order, then infinity.
    friend bool operator==(const P1Point& a, const P1Point& b) noexcept
    {
        return a.inf == b.inf && (a.inf || a.x == b.x);
    }
    friend std::strong_ordering operator<=>(const P1Point& a, const P1Point& b) noexcept
    {
        if (a.inf != b.inf)
            return a.inf ? std::strong_ordering::greater : std::strong_ordering::less;
        if (a.inf)
            return std::strong_ordering::equal;
        return a.x <=> b.x;
    }
};

struct BranchLocus
{
    const FieldDesc* field = nullptr;
    std::vector<P1Point> points; // 10 distinct points, sorted
};

/// Roots of f in target, plus infinity when deg f = 9. Throws InvalidDegree
/// unless deg f is 9 or 10, NotSquareFree, and RootsOutsideField when f does
/// not split over target.
BranchLocus branch_locus(const Poly& f, const FieldDesc& target);

/// x -> (a x + b) / (c x + d)
class MobiusMap
{
public:
    MobiusMap(FieldElement a, FieldElement b, FieldElement c, FieldElement d);
    static MobiusMap identity(const FieldDesc& f);

    P1Point operator()(const P1Point& z) const;
    /// (*this) after g
    MobiusMap after(const MobiusMap& g) const;
    MobiusMap inverse() const;
    FieldElement det() const { return a_ * d_ - b_ * c_; }
    const FieldElement& a() const noexcept { return a_; }
    const FieldElement& b() const noexcept { return b_; }
    const FieldElement& c() const noexcept { return c_; }
    const FieldElement& d() const noexcept { return d_; }
    /// Equality as projective maps (up to a scalar).
    bool same_as(const MobiusMap& o) const;

private:
    FieldElement a_, b_, c_, d_;
};

/// The unique map with src[i] -> dst[i]. Throws DegenerateTriple when either
/// triple has a repeated point.
MobiusMap mobius_through(const std::array<P1Point, 3>& src, const std::array<P1Point, 3>& dst);

/// True iff some Mobius map carries one locus onto the other. Both loci are
/// embedded into the larger of their fields.
bool loci_equivalent(const BranchLocus& x, const BranchLocus& y);

/// Genus-4 models f, g with branch loci over field. Throws RootsOutsideField.
bool hyperelliptic_iso(const Poly& f, const Poly& g, const FieldDesc& field);
/// Same over F_{p^8}.
bool hyperelliptic_iso(const Poly& f, const Poly& g);

/// Complete Mobius invariant: over all ordered triples of the locus, send the
/// triple to (0, 1, inf) and sort the other 7 images; the key is the
/// smallest such list. Equal keys iff equivalent loci, across tower fields.
using CanonicalKey = std::vector<FieldElement>;
CanonicalKey canonical_key(const BranchLocus& locus);

} // namespace ssp4
