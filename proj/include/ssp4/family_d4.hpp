#pragma once

// Genus-4 curves with Aut containing D4, in the normal form
//
//     y^2 = (x^2 - 1)(x^2 - c2)(x^2 - c3)(x^2 - c4)(x^2 - c5),   c2 c3 = c4 c5 = 1,
//
// equivalently y^2 = (x^2 - 1)(x^4 + a x^2 + 1)(x^4 + b x^2 + 1) with
// a = -(c2 + c3), b = -(c4 + c5). Two enumerators: pairs of isomorphic
// Rosenhain curves sharing five branch points, and a direct (a, b) scan.

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <vector>

#include "ssp4/field.hpp"
#include "ssp4/genus2.hpp"
#include "ssp4/iso4.hpp"
#include "ssp4/lambda_family.hpp"
#include "ssp4/poly.hpp"

namespace ssp4 {

using CTuple = std::array<FieldElement, 4>; // (c2, c3, c4, c5)

/// (lambda1, lambda2, lambda3, lambda3'): the curves C_{l1,l2,l3} and
/// C_{l1,l2,l3'} share the branch points 0, 1, inf, l1, l2.
struct RosenhainPair
{
    FieldElement l1, l2, l3, l3p;
    /// Entries avoid {0, 1} and are pairwise distinct.
    bool valid() const;
    friend bool operator==(const RosenhainPair&, const RosenhainPair&) = default;
};

/// c2 = l3'/l3, c3 = (1-l3')/(1-l3), c4 = (l1-l3')/(l1-l3), c5 = (l2-l3')/(l2-l3).
/// Throws DegenerateConfiguration for an invalid pair or result.
CTuple cs_from_lambdas(const RosenhainPair& pair);

/// l1 = (c4-c2)(c3-1)/((c4-1)(c3-c2)), l2 likewise with c5,
/// l3 = c2(c3-1)/(c3-c2), l3' = (c3-1)/(c3-c2). Composed with cs_from_lambdas
/// this exchanges l3 and l3'. Throws DegenerateConfiguration.
RosenhainPair lambdas_from_cs(const CTuple& c);

/// c2 c3 = 1 and c4 c5 = 1.
bool d4_condition(const CTuple& c);

struct D4NormalForm
{
    std::uint64_t p = 0;
    CTuple c;

    /// c2, c3 the roots of u^2 + a u + 1 and c4, c5 those of u^2 + b u + 1,
    /// each pair in increasing order. Throws DegenerateConfiguration when the
    /// model is not square-free (a = b, or a or b in {2, -2}) and
    /// RootsOutsideField if the roots are not in F_{p^16}.
    static D4NormalForm from_ab(const FieldElement& a, const FieldElement& b);

    /// (x^2-1)(x^2-c2)(x^2-c3)(x^2-c4)(x^2-c5), over the field of the c's.
    Poly model() const;
    /// The quotient (u-1)(u-c2)(u-c3)(u-c4)(u-c5).
    Poly quotient() const;
    bool has_d4() const { return d4_condition(c); }
    /// (a, b) when has_d4().
    std::optional<std::pair<FieldElement, FieldElement>> ab() const;
};

/// Normal form of y^2 = x^9 + A x^7 + B x^5 + A x^3 + x, through
/// x -> (1+x)/(1-x). The branch points can need F_{p^16}. Throws
/// NotSquareFree, DegenerateConfiguration (a branch point at +-1) and
/// RootsOutsideField.
D4NormalForm normalize_deg9(const FieldElement& A, const FieldElement& B);

/// Canonical Mobius key of a D4NormalForm, computed over F_{p^8} (F_{p^16}
/// when the c's need it).
CanonicalKey d4_key(const D4NormalForm& form);

/// Keys of the curves whose Aut strictly contains D4: every D8/C16:C2 curve,
/// and C5:D4. A D10 curve with lambda != -1 has no D4 subgroup and is left out.
struct ExclusionList
{
    std::vector<std::pair<CanonicalKey, AutGroup>> entries;
    /// D4 unless key matches an entry.
    AutGroup label(const CanonicalKey& key) const;

    static ExclusionList build(std::uint64_t p, std::mt19937_64& rng);
};

struct D4Class
{
    D4NormalForm form;
    AutGroup aut;
    CanonicalKey key;
};

struct D4Report
{
    std::uint64_t p = 0;
    std::vector<D4Class> classes; // sorted by key
    std::size_t candidates = 0;   // pairs (or (a, b) hits) examined before dedup
    std::size_t stored = 0;       // passing the D4 condition
    std::size_t degenerate = 0;   // superspecial but not square-free, skipped
    /// Pairs emitted by the Rosenhain pipeline, in discovery order.
    std::vector<RosenhainPair> pairs;

    unsigned count(AutGroup g) const;
};

struct D4Options
{
    std::optional<std::filesystem::path> cache_dir; // genus-2 step cache
    std::uint64_t seed = 0;
    bool keep_pairs = false;
    Backend backend = Backend::Kernel;
};

/// Rosenhain-pair pipeline: all superspecial triples, every relabeling that
/// shares exactly two of the three coordinates, kept under the D4 condition.
D4Report d4_enumerate(std::uint64_t p, const D4Options& opt = {});

/// Direct scan over (a, b) in F_{p^2}^2.
D4Report d4_enumerate_direct(std::uint64_t p, const D4Options& opt = {});

/// Deduplicates forms by canonical key and labels them. The forms' fields
/// may differ.
std::vector<D4Class> classify_d4(const std::vector<D4NormalForm>& forms, const ExclusionList& excl);

} // namespace ssp4
