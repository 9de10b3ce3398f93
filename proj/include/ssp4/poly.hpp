#pragma once

// Dense univariate polynomials over a tower field, lowest degree first.

#include <cstdint>
#include <initializer_list>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ssp4/field.hpp"

namespace ssp4 {

class Poly
{
public:
    Poly() = default;
    explicit Poly(const FieldDesc& f) : desc_(&f) {}
    Poly(const FieldDesc& f, std::vector<FieldElement> coeffs);

    /// Integer coefficients, lowest degree first.
    static Poly from_ints(const FieldDesc& f, std::initializer_list<std::int64_t> coeffs);
    static Poly from_ints(const FieldDesc& f, const std::vector<std::int64_t>& coeffs);
    static Poly constant(const FieldElement& c);
    static Poly monomial(const FieldElement& c, unsigned n);
    /// x - r
    static Poly linear(const FieldElement& r);
    static Poly x(const FieldDesc& f) { return monomial(FieldElement::one(f), 1); }

    const FieldDesc& field() const;
    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    bool is_constant() const noexcept { return c_.size() <= 1; }
    const std::vector<FieldElement>& coeffs() const noexcept { return c_; }
    /// Coefficient of x^i; zero beyond the degree.
    FieldElement coeff(std::size_t i) const;
    const FieldElement& leading() const;

    Poly monic() const;
    Poly derivative() const;
    Poly embed(const FieldDesc& larger) const;
    Poly scaled(const FieldElement& s) const;
    FieldElement eval(const FieldElement& x) const;

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly mul_schoolbook(const Poly& a, const Poly& b);
    Poly operator-() const;

    friend bool operator==(const Poly& a, const Poly& b) noexcept { return a.c_ == b.c_; }

    /// Human readable form, e.g. "3*x^2 + 2*x + 3" for prime fields.
    std::string to_string(const char* var = "x") const;

private:
    void trim();
    void require_same(const Poly& o) const;

    const FieldDesc* desc_ = nullptr;
    std::vector<FieldElement> c_;
};

/// Schoolbook product, kept as the reference for the Karatsuba path.
Poly mul_schoolbook(const Poly& a, const Poly& b);
/// Product truncated to degree < n.
Poly mul_truncated(const Poly& a, const Poly& b, std::size_t n);

std::pair<Poly, Poly> divrem(const Poly& f, const Poly& g);
Poly operator%(const Poly& f, const Poly& g);

/// Monic gcd. Throws BothZero when both inputs vanish.
Poly gcd(const Poly& f, const Poly& g);
/// True iff gcd(f, f') is constant. Throws ZeroPolynomial for f = 0.
bool is_separable(const Poly& f);

Poly mulmod(const Poly& a, const Poly& b, const Poly& m);
/// base^n mod m, exponent given by its binary digits, least significant first.
Poly powmod(const Poly& base, const std::vector<bool>& bits, const Poly& m);
Poly powmod(const Poly& base, std::uint64_t n, const Poly& m);

/// The x^d coefficients of f^e for every d in wanted.
std::map<unsigned, FieldElement> power_coeffs(const Poly& f, unsigned e, const std::set<unsigned>& wanted);

/// Distinct roots of f that lie in target, sorted by the element order.
/// target must contain the field of f.
std::vector<FieldElement> roots_in(const Poly& f, const FieldDesc& target, std::mt19937_64& rng);

/// gcd(f, x^q - x) with q = |target|, computed over the field of f.
Poly rational_part(const Poly& f, const FieldDesc& target);

} // namespace ssp4
