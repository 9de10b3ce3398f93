#pragma once

// Cartier-Manin matrices of hyperelliptic curves y^2 = f(x).

#include <vector>

#include "ssp4/field.hpp"
#include "ssp4/poly.hpp"

namespace ssp4 {

class HyperellipticModel
{
public:
    /// Throws InvalidDegree when deg f < 3 and NotSquareFree when f has a
    /// repeated factor.
    explicit HyperellipticModel(Poly f);

    const Poly& f() const noexcept { return f_; }
    const FieldDesc& field() const { return f_.field(); }
    /// ceil(deg f / 2) - 1
    unsigned genus() const noexcept { return g_; }

private:
    Poly f_;
    unsigned g_;
};

class CMMatrix
{
public:
    CMMatrix(std::uint64_t p, unsigned g, std::vector<FieldElement> entries)
        : p_(p), g_(g), m_(std::move(entries))
    {}

    std::uint64_t p() const noexcept { return p_; }
    unsigned genus() const noexcept { return g_; }
    /// 1-indexed entry (i, j) = gamma_{ip-j}.
    const FieldElement& at(unsigned i, unsigned j) const { return m_.at((i - 1) * g_ + (j - 1)); }
    bool is_zero() const noexcept;
    /// Bit (i-1)*g + (j-1) set iff entry (i, j) is nonzero.
    std::vector<bool> support() const;

private:
    std::uint64_t p_;
    unsigned g_;
    std::vector<FieldElement> m_;
};

/// Generic path: coefficients of f^e extracted with power_coeffs.
CMMatrix cm_matrix(const HyperellipticModel& model);
bool is_superspecial(const HyperellipticModel& model);

/// Closed-form path for y^2 = x^s (x^r - 1)(x^r - lambda), s in {0, 1}.
CMMatrix family_cm_matrix(unsigned r, unsigned s, const FieldElement& lambda);

/// x^s (x^r - 1)(x^r - lambda) over the field of lambda.
Poly family_poly(unsigned r, unsigned s, const FieldElement& lambda);

} // namespace ssp4
