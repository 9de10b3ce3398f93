#include "ssp4/lambda_family.hpp"

#include <algorithm>

#include "ssp4/errors.hpp"
#include "ssp4/hypergeom.hpp"

namespace ssp4 {

std::string aut_name(AutGroup g)
{
    switch (g) {
    case AutGroup::D4: return "D4";
    case AutGroup::D8: return "D8";
    case AutGroup::D10: return "D10";
    case AutGroup::G32: return "C16:C2";
    case AutGroup::G40: return "C5:D4";
    }
    return "?";
}

AutGroup parse_aut(const std::string& s)
{
    if (s == "D4")
        return AutGroup::D4;
    if (s == "D8")
        return AutGroup::D8;
    if (s == "D10")
        return AutGroup::D10;
    if (s == "C16:C2" || s == "G32")
        return AutGroup::G32;
    if (s == "C5:D4" || s == "G40")
        return AutGroup::G40;
    throw ParseError("unknown automorphism group '" + s + "'");
}

const LambdaFamily& LambdaFamily::get(LambdaKind kind)
{
    static const LambdaFamily d8{LambdaKind::D8, 4, 1, 8, AutGroup::D8, AutGroup::G32};
    static const LambdaFamily d10{LambdaKind::D10, 5, 0, 10, AutGroup::D10, AutGroup::G40};
    return kind == LambdaKind::D8 ? d8 : d10;
}

namespace {

void require_prime(LambdaKind kind, std::uint64_t p)
{
    if (p < 7 || !is_prime(p))
        throw InvalidPrime("family computations need a prime p >= 7");
    (void)kind;
}

// Residue classes in the order of the index and shape tables.
unsigned residue_slot(LambdaKind kind, std::uint64_t p)
{
    if (kind == LambdaKind::D8)
        return static_cast<unsigned>((p % 8) / 2); // 1, 3, 5, 7 -> 0..3
    switch (p % 10) {
    case 1: return 0;
    case 3: return 1;
    case 7: return 2;
    default: return 3; // 9
    }
}

} // namespace

std::pair<unsigned, unsigned> index_pair(LambdaKind kind, std::uint64_t p)
{
    require_prime(kind, p);
    static constexpr std::pair<unsigned, unsigned> d8[4] = {{3, 4}, {4, 3}, {1, 2}, {2, 1}};
    static constexpr std::pair<unsigned, unsigned> d10[4] = {{3, 4}, {4, 2}, {1, 3}, {2, 1}};
    const unsigned k = residue_slot(kind, p);
    return kind == LambdaKind::D8 ? d8[k] : d10[k];
}

std::array<unsigned, 4> cm_shape(LambdaKind kind, std::uint64_t p)
{
    require_prime(kind, p);
    static constexpr std::array<unsigned, 4> d8[4] = {{1, 2, 3, 4}, {2, 1, 4, 3}, {3, 4, 1, 2}, {4, 3, 2, 1}};
    static constexpr std::array<unsigned, 4> d10[4] = {{1, 2, 3, 4}, {3, 1, 4, 2}, {2, 4, 1, 3}, {4, 3, 2, 1}};
    const unsigned k = residue_slot(kind, p);
    return kind == LambdaKind::D8 ? d8[k] : d10[k];
}

Poly family_gcd(LambdaKind kind, std::uint64_t p)
{
    const auto [i, j] = index_pair(kind, p);
    const auto& fam = LambdaFamily::get(kind);
    const unsigned m1 = static_cast<unsigned>(3 * p - i), m2 = static_cast<unsigned>(4 * p - j);
    const Poly a = kind == LambdaKind::D8 ? beta_poly(p, fam.r, m1) : alpha_poly(p, fam.r, m1);
    const Poly b = kind == LambdaKind::D8 ? beta_poly(p, fam.r, m2) : alpha_poly(p, fam.r, m2);
    return gcd(a, b);
}

bool gcd_degree_odd(LambdaKind kind, std::uint64_t p)
{
    if (kind == LambdaKind::D8)
        return p % 16 == 15 || p % 16 == 9;
    return p % 10 == 9;
}

unsigned family_count_from(LambdaKind kind, std::uint64_t p, const Poly& g)
{
    const unsigned d = static_cast<unsigned>(g.degree());
    const bool odd = gcd_degree_odd(kind, p);
    if ((d % 2 == 1) != odd)
        throw ParityViolation(std::string(LambdaFamily::get(kind).tag()) + " gcd degree " + std::to_string(d) +
                              " has the wrong parity at p = " + std::to_string(p));
    return odd ? (d - 1) / 2 : d / 2;
}

unsigned family_count(LambdaKind kind, std::uint64_t p) { return family_count_from(kind, p, family_gcd(kind, p)); }

Poly LambdaCurve::model() const
{
    const auto& fam = LambdaFamily::get(kind);
    const FieldDesc& f = lambda.field();
    std::vector<FieldElement> c(2 * fam.r + fam.s + 1, FieldElement(f));
    // x^s (x^r - 1)(x^r - lambda) = x^s (x^{2r} - (1 + lambda) x^r + lambda)
    c[fam.s] = lambda;
    c[fam.s + fam.r] = -(lambda + FieldElement::one(f));
    c[fam.s + 2 * fam.r] = FieldElement::one(f);
    return Poly(f, std::move(c));
}

std::vector<LambdaCurve> family_enumerate(LambdaKind kind, std::uint64_t p, std::mt19937_64& rng)
{
    const auto& fam = LambdaFamily::get(kind);
    const Poly g = family_gcd(kind, p);
    if (g.degree() <= 0)
        return {};
    if (!is_separable(g))
        throw ConsistencyViolation(std::string(fam.tag()) + " gcd is not separable at p = " + std::to_string(p));
    const FieldDesc& f4 = FieldDesc::get(p, 4);
    if (rational_part(g, f4).degree() != g.degree())
        throw RationalityViolation(std::string(fam.tag()) + " gcd has roots outside F_{p^4} at p = " +
                                   std::to_string(p));
    const auto roots = roots_in(g, f4, rng);
    if (roots.size() != static_cast<std::size_t>(g.degree()))
        throw ConsistencyViolation("root extraction lost roots");

    const FieldElement minus_one = -FieldElement::one(f4);
    std::vector<LambdaCurve> out;
    for (const auto& l : roots) {
        if (l.is_zero() || l.is_one())
            throw ConsistencyViolation(std::string(fam.tag()) + " gcd vanishes at 0 or 1");
        if (l == minus_one) {
            out.push_back({p, kind, l, fam.special});
            continue;
        }
        const FieldElement li = l.inv();
        if (!std::binary_search(roots.begin(), roots.end(), li))
            throw ConsistencyViolation(std::string(fam.tag()) + " root set is not closed under inversion");
        if (l < li)
            out.push_back({p, kind, l, fam.generic});
    }
    std::sort(out.begin(), out.end(), [](const LambdaCurve& a, const LambdaCurve& b) { return a.lambda < b.lambda; });
    return out;
}

} // namespace ssp4
