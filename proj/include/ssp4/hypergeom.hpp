#pragma once

// Coefficients of {(x-1)(x-lambda)}^e, e = (p-1)/2, and of the sparse
// families y^2 = (x^r-1)(x^r-lambda), y^2 = x(x^r-1)(x^r-lambda), as
// polynomials in lambda over F_p.

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "ssp4/field.hpp"
#include "ssp4/poly.hpp"

namespace ssp4 {

/// n! and 1/n! mod p for 0 <= n < p. Built once per prime and shared.
class FactorialTable
{
public:
    static const FactorialTable& get(std::uint64_t p);

    std::uint64_t p() const noexcept { return p_; }
    std::uint64_t e() const noexcept { return (p_ - 1) / 2; }
    std::uint64_t fact(std::uint64_t n) const { return fact_.at(n); }
    std::uint64_t inv_fact(std::uint64_t n) const { return inv_fact_.at(n); }
    /// C(n, k) mod p for n < p; zero when k < 0 or k > n.
    std::uint64_t binom(std::int64_t n, std::int64_t k) const noexcept
    {
        if (k < 0 || n < 0 || k > n)
            return 0;
        return mod_mul(mod_mul(fact_[n], inv_fact_[k], p_), inv_fact_[n - k], p_);
    }

    explicit FactorialTable(std::uint64_t p);

private:
    std::uint64_t p_;
    std::vector<std::uint64_t> fact_, inv_fact_;
};

/// num/den as an element of F_p.
FieldElement rational_mod(std::uint64_t p, std::int64_t num, std::int64_t den = 1);

/// sum_{n=0}^{d} g_n z^n with g_0 = 1, g_n = g_{n-1} (a+n-1)(b+n-1) / ((c+n-1) n).
/// Throws DenominatorVanishes(n) when c+n-1 = 0 mod p (n >= p is reported
/// through the vanishing of n itself). Once a numerator factor vanishes the
/// remaining terms are zero and no further denominators are inspected.
Poly hyper_truncation(const FieldElement& a, const FieldElement& b, const FieldElement& c, unsigned d);

/// x^k coefficient of {(x-1)(x-lambda)}^e as a polynomial in lambda, by the
/// binomial convolution. Throws IndexOutOfRange for k > p-1.
Poly gamma_coeff(std::uint64_t p, unsigned k);

/// The same coefficient through the truncated hypergeometric closed forms.
/// May throw DenominatorVanishes.
Poly gamma_coeff_hypergeometric(std::uint64_t p, unsigned k);

/// Hypergeometric fast path with fallback to the binomial form.
Poly gamma_coeff_fast(std::uint64_t p, unsigned k);

/// alpha_d of (x^r-1)(x^r-lambda), equal to beta_{d+e} of x(x^r-1)(x^r-lambda).
/// Throws IndexOutOfRange for d > r(p-1).
Poly alpha_beta_poly(std::uint64_t p, unsigned r, unsigned d);

/// alpha_d itself (no shift).
inline Poly alpha_poly(std::uint64_t p, unsigned r, unsigned d) { return alpha_beta_poly(p, r, d); }
/// beta_m = alpha_{m-e}; zero for m < e.
Poly beta_poly(std::uint64_t p, unsigned r, unsigned m);

enum class CoeffForm { Polynomial, Evaluated };

/// A request for gamma_k of the r-family at prime p.
struct CoeffRequest
{
    std::uint64_t p = 0;
    unsigned r = 1;
    unsigned k = 0;
    CoeffForm form = CoeffForm::Polynomial;
    /// Evaluation point, required when form == Evaluated.
    std::optional<FieldElement> lambda;
};

/// Throws InvalidPrime or IndexOutOfRange on an ill-formed request.
std::variant<Poly, FieldElement> compute(const CoeffRequest& req);

} // namespace ssp4
