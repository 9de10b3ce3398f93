#pragma once

// y^2 = x (x^4 - 1)(x^4 - lambda): Aut is D8, or C16:C2 at lambda = -1.

#include "ssp4/lambda_family.hpp"

namespace ssp4 {

using D8Curve = LambdaCurve;

/// (3,4), (4,3), (1,2), (2,1) for p = 1, 3, 5, 7 mod 8.
inline std::pair<unsigned, unsigned> d8_index_pair(std::uint64_t p) { return index_pair(LambdaKind::D8, p); }
/// gcd(beta_{3p-i}, beta_{4p-j}), monic.
inline Poly d8_F_poly(std::uint64_t p) { return family_gcd(LambdaKind::D8, p); }
inline unsigned d8_count(std::uint64_t p) { return family_count(LambdaKind::D8, p); }
inline std::vector<D8Curve> d8_enumerate(std::uint64_t p, std::mt19937_64& rng)
{
    return family_enumerate(LambdaKind::D8, p, rng);
}

} // namespace ssp4
