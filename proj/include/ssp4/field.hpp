#pragma once

// Finite fields F_{p^k}, k in {1, 2, 4, 8, 16}, built as a tower of quadratic
// extensions
//
//     F_p = L0 ⊂ L1 = L0(t1) ⊂ L2 = L1(t2) ⊂ L3 = L2(t3) ⊂ L4 = L3(t4),
//     t_i^2 = c_i ∈ L_{i-1}.
//
// An element of L_i is stored as 2^i coordinates over F_p. Coordinate j is
// the coefficient of the monomial prod_{b : bit b of j is set} t_{b+1}, so
// the first half of the vector is the L_{i-1}-part and the second half is
// the coefficient of t_i. Subfield elements embed by zero padding.
//
// Each c_i is the smallest element of L_{i-1}, ordered by integer
// representative sum_j coord_j * p^j, that is a non-square in L_{i-1}.

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ssp4 {

inline constexpr unsigned kMaxDegree = 16;
inline constexpr unsigned kMaxLevel = 4;

using Coords = std::array<std::uint64_t, kMaxDegree>;

bool is_prime(std::uint64_t n);

/// Descriptor of F_{p^k}. Instances are interned: equal (p, k) yields the
/// same object, so descriptors compare by address.
class FieldDesc
{
public:
    static const FieldDesc& get(std::uint64_t p, unsigned k);

    std::uint64_t p() const noexcept { return p_; }
    unsigned degree() const noexcept { return 1u << level_; }
    unsigned level() const noexcept { return level_; }

    /// F_{p^m} inside this tower; m must divide the degree.
    const FieldDesc& subfield(unsigned m) const;
    /// F_{p^k} over the same prime.
    const FieldDesc& with_degree(unsigned k) const { return get(p_, k); }
    bool contains(const FieldDesc& other) const noexcept
    {
        return other.p_ == p_ && other.level_ <= level_;
    }

    /// c_{i+1} with 0 <= i < level(), as 2^i coordinates over F_p.
    std::span<const std::uint64_t> tower_constant(unsigned i) const;

    /// Binary digits, least significant first, of p^k and of (p^k - 1)/2.
    std::vector<bool> order_bits() const;
    std::vector<bool> half_unit_order_bits() const;

    FieldDesc(const FieldDesc&) = delete;
    FieldDesc& operator=(const FieldDesc&) = delete;

private:
    struct Tower;
    FieldDesc(std::uint64_t p, unsigned level, const Tower* tower)
        : p_(p), level_(level), tower_(tower)
    {}

    std::uint64_t p_;
    unsigned level_;
    const Tower* tower_;

    friend class FieldElement;
    friend struct TowerOps;
};

class FieldElement
{
public:
    /// Unbound element; only assignment and destruction are valid.
    FieldElement() = default;
    explicit FieldElement(const FieldDesc& f) : desc_(&f) {}
    FieldElement(const FieldDesc& f, std::int64_t value);

    static FieldElement from_coords(const FieldDesc& f, std::span<const std::uint64_t> coords);
    static FieldElement one(const FieldDesc& f) { return FieldElement(f, 1); }
    static FieldElement random(const FieldDesc& f, std::mt19937_64& rng);
    /// Element whose integer representative is n (n < p^k).
    static FieldElement from_index(const FieldDesc& f, std::uint64_t n);
    /// Inverse of from_index; only meaningful when p^k fits in 64 bits.
    std::uint64_t index() const;

    const FieldDesc& field() const;
    bool bound() const noexcept { return desc_ != nullptr; }
    std::span<const std::uint64_t> coords() const { return {c_.data(), degree()}; }
    const Coords& padded_coords() const noexcept { return c_; }
    std::uint64_t coord(unsigned i) const { return c_[i]; }

    bool is_zero() const noexcept;
    bool is_one() const noexcept;

    FieldElement& operator+=(const FieldElement& o);
    FieldElement& operator-=(const FieldElement& o);
    FieldElement& operator*=(const FieldElement& o);
    FieldElement& operator/=(const FieldElement& o);

    friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
    friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
    friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
    friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
    FieldElement operator-() const;

    /// Multiplication by an element of F_p given as an integer.
    FieldElement scaled(std::uint64_t s) const;

    FieldElement inv() const;
    FieldElement pow(std::uint64_t n) const;
    /// Exponent given by its binary digits, least significant first.
    FieldElement pow_bits(const std::vector<bool>& bits) const;

    /// Image under the canonical embedding into a field containing this one.
    FieldElement embed(const FieldDesc& larger) const;
    /// The same element viewed in a subfield, if it lies there.
    std::optional<FieldElement> restrict_to(const FieldDesc& smaller) const;

    /// Equality across fields of the same characteristic follows the
    /// canonical embedding.
    friend bool operator==(const FieldElement& a, const FieldElement& b) noexcept;
    /// Total order by integer representative sum_j coord_j * p^j. Compatible
    /// with the embeddings, so it is well defined across the tower.
    friend std::strong_ordering operator<=>(const FieldElement& a, const FieldElement& b) noexcept;

    /// "p^k:[a0,a1,...]"
    std::string to_string() const;
    static FieldElement parse(std::string_view text);

private:
    unsigned degree() const noexcept;
    void require_same(const FieldElement& o) const;

    const FieldDesc* desc_ = nullptr;
    Coords c_{};

    friend struct TowerOps;
};

bool is_square(const FieldElement& x);
/// Square root with the smaller of {r, -r} in the element order; absent
/// when x is not a square in its field.
std::optional<FieldElement> sqrt(const FieldElement& x);
/// x^(p^i)
FieldElement frobenius(const FieldElement& x, unsigned i);
/// True iff x^(p^m) = x. Throws InvalidDegree if m does not divide the
/// degree of x's field.
bool in_subfield(const FieldElement& x, unsigned m);
/// Norm down to F_p.
std::uint64_t norm_to_prime(const FieldElement& x);

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p);
std::uint64_t mod_pow(std::uint64_t a, std::uint64_t n, std::uint64_t p);
inline std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) noexcept
{
    if ((a | b) >> 32 == 0)
        return a * b % p;
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}
/// Legendre symbol in {-1, 0, 1}.
int legendre(std::uint64_t a, std::uint64_t p);

} // namespace ssp4
