#pragma once

// One-parameter genus-4 families shared by the D8 and D10 code paths:
//
//     D8:   H_lambda  : y^2 = x (x^4 - 1)(x^4 - lambda)
//     D10:  H'_lambda : y^2 = (x^5 - 1)(x^5 - lambda)
//
// Superspecial parameters are the roots of a gcd of two coefficient
// polynomials in lambda; counting uses the gcd degree alone.

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ssp4/field.hpp"
#include "ssp4/poly.hpp"

namespace ssp4 {

enum class LambdaKind { D8, D10 };

/// Automorphism types that occur for the curves this library emits.
enum class AutGroup { D4, D8, D10, G32, G40 };

/// "D4", "D8", "D10", "C16:C2", "C5:D4"
std::string aut_name(AutGroup g);
/// Inverse of aut_name; also accepts "G32" and "G40". Throws ParseError.
AutGroup parse_aut(const std::string& s);

struct LambdaFamily
{
    LambdaKind kind;
    unsigned r;        // x^r
    unsigned s;        // leading x^s factor
    unsigned modulus;  // congruence class modulus for the index table
    AutGroup generic;  // Aut at a generic parameter
    AutGroup special;  // Aut at lambda = -1

    static const LambdaFamily& get(LambdaKind kind);
    const char* tag() const { return kind == LambdaKind::D8 ? "D8" : "D10"; }
};

/// (i, j) such that the curve is superspecial iff the coefficients at
/// 3p - i and 4p - j vanish.
std::pair<unsigned, unsigned> index_pair(LambdaKind kind, std::uint64_t p);

/// Monic gcd of the two designated coefficient polynomials, over F_p.
Poly family_gcd(LambdaKind kind, std::uint64_t p);

/// Whether deg family_gcd is odd, predicted from p alone.
bool gcd_degree_odd(LambdaKind kind, std::uint64_t p);

/// Number of classes with the generic automorphism group. Uses the gcd
/// degree only. Throws ParityViolation when the degree parity is off.
unsigned family_count(LambdaKind kind, std::uint64_t p);
/// Same, for a precomputed gcd.
unsigned family_count_from(LambdaKind kind, std::uint64_t p, const Poly& g);

/// 1-indexed column of the only entry of row i (1..4) of the CM matrix that
/// can be nonzero.
std::array<unsigned, 4> cm_shape(LambdaKind kind, std::uint64_t p);

struct LambdaCurve
{
    std::uint64_t p;
    LambdaKind kind;
    FieldElement lambda; // in F_{p^4}
    AutGroup aut;

    Poly model() const;
};

/// One representative per class: lambda = -1 with the special group when it
/// is a root; the other roots up to lambda <-> 1/lambda, keeping the smaller
/// of the two. Sorted by lambda. Throws RationalityViolation when a root is
/// not in F_{p^4} and ConsistencyViolation when the gcd is not separable.
std::vector<LambdaCurve> family_enumerate(LambdaKind kind, std::uint64_t p, std::mt19937_64& rng);

} // namespace ssp4
