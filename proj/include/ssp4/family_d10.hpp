#pragma once

// y^2 = (x^5 - 1)(x^5 - lambda): Aut is D10, or C5:D4 at lambda = -1.

#include "ssp4/lambda_family.hpp"

namespace ssp4 {

using D10Curve = LambdaCurve;

/// (3,4), (4,2), (1,3), (2,1) for p = 1, 3, 7, 9 mod 10.
inline std::pair<unsigned, unsigned> d10_index_pair(std::uint64_t p) { return index_pair(LambdaKind::D10, p); }
/// gcd(alpha_{3p-i}, alpha_{4p-j}), monic.
inline Poly d10_G_poly(std::uint64_t p) { return family_gcd(LambdaKind::D10, p); }
inline unsigned d10_count(std::uint64_t p) { return family_count(LambdaKind::D10, p); }
inline std::vector<D10Curve> d10_enumerate(std::uint64_t p, std::mt19937_64& rng)
{
    return family_enumerate(LambdaKind::D10, p, rng);
}

} // namespace ssp4
