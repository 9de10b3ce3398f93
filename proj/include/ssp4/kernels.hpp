#pragma once

// Flat F_{p^2} scan kernels, OpenMP-parallel over their outer loop.
// Restricted to p < 2^20 so that sums of up to 2^23 products fit in 64 bits.

#include <cstdint>
#include <functional>
#include <vector>

namespace ssp4::kernels {

inline constexpr std::uint64_t kMaxKernelPrime = 1u << 20;

/// a + b t with t^2 = c, the tower constant of F_{p^2}.
struct Fp2
{
    std::uint64_t a = 0, b = 0;
    friend bool operator==(const Fp2&, const Fp2&) = default;
    bool is_zero() const noexcept { return (a | b) == 0; }
};

class Fp2Ops
{
public:
    explicit Fp2Ops(std::uint64_t p);

    std::uint64_t p() const noexcept { return p_; }
    std::uint64_t c() const noexcept { return c_; }
    std::uint64_t order() const noexcept { return p_ * p_; }

    Fp2 add(Fp2 x, Fp2 y) const noexcept { return {red1(x.a + y.a), red1(x.b + y.b)}; }
    Fp2 sub(Fp2 x, Fp2 y) const noexcept { return {red1(x.a + p_ - y.a), red1(x.b + p_ - y.b)}; }
    Fp2 neg(Fp2 x) const noexcept { return {x.a ? p_ - x.a : 0, x.b ? p_ - x.b : 0}; }
    Fp2 mul(Fp2 x, Fp2 y) const noexcept
    {
        const std::uint64_t bb = x.b * y.b % p_;
        return {(x.a * y.a + c_ * bb) % p_, (x.a * y.b + x.b * y.a) % p_};
    }
    Fp2 scale(Fp2 x, std::uint64_t s) const noexcept { return {x.a * s % p_, x.b * s % p_}; }
    Fp2 inv(Fp2 x) const;
    Fp2 from_index(std::uint64_t n) const noexcept { return {n % p_, n / p_}; }
    std::uint64_t index(Fp2 x) const noexcept { return x.a + x.b * p_; }
    /// Integer-representative order, matching FieldElement.
    static bool less(Fp2 x, Fp2 y) noexcept { return x.b != y.b ? x.b < y.b : x.a < y.a; }

    // Lazy accumulator for sums of products.
    struct Acc
    {
        std::uint64_t aa = 0, bb = 0, ab = 0;
    };
    void fma(Acc& acc, Fp2 x, Fp2 y) const noexcept
    {
        acc.aa += x.a * y.a;
        acc.bb += x.b * y.b;
        acc.ab += x.a * y.b + x.b * y.a;
    }
    void fma(Acc& acc, Fp2 x, std::uint64_t s) const noexcept
    {
        acc.aa += x.a * s;
        acc.ab += x.b * s;
    }
    Fp2 finish(const Acc& acc) const noexcept
    {
        return {(acc.aa % p_ + c_ * (acc.bb % p_)) % p_, acc.ab % p_};
    }

private:
    std::uint64_t red1(std::uint64_t v) const noexcept { return v >= p_ ? v - p_ : v; }
    std::uint64_t p_, c_;
};

using Fp2Poly = std::vector<Fp2>;

/// Monic gcd; inputs are trimmed copies. Returns {} only when both vanish.
Fp2Poly gcd(const Fp2Ops& k, Fp2Poly f, Fp2Poly g);
void trim(Fp2Poly& f);

/// Distinct roots in F_{p^2} of a nonzero polynomial, sorted.
std::vector<Fp2> roots(const Fp2Ops& k, const Fp2Poly& f);

struct TripleIdx
{
    std::uint64_t lambda, mu, nu; // F_{p^2} indices
};

/// All ordered superspecial Rosenhain triples, sorted by (lambda, mu, nu) in
/// the element order. threads <= 0 uses the OpenMP default.
std::vector<TripleIdx> rosenhain_scan(std::uint64_t p, int threads = 0);

/// Genus-2 Cartier-Manin entries of y^2 = (u-1)(u^2+au+1)(u^2+bu+1) as
/// polynomials in b, for fixed a. Entries in the order p-1, p-2, 2p-1, 2p-2.
class D4Scanner
{
public:
    explicit D4Scanner(std::uint64_t p);
    std::uint64_t p() const noexcept { return k_.p(); }
    const Fp2Ops& ops() const noexcept { return k_; }

    /// Values b with C_{a,b} superspecial. Neither a nor b is filtered.
    std::vector<Fp2> partners(Fp2 a) const;

private:
    Fp2Poly entry(const Fp2Poly& q, unsigned d) const;

    Fp2Ops k_;
    unsigned e_;
    std::vector<std::uint64_t> binom_; // (e+1) x (e+1)
    std::vector<std::uint64_t> inv_int_;
    Fp2Poly um1_e_;                    // (u-1)^e
};

struct PairIdx
{
    std::uint64_t a, b;
};

/// All (a, b) in F_{p^2}^2 with a, b not in {2, -2}, a != b and C_{a,b}
/// superspecial, sorted. Parallel over a. Superspecial hits with b = a or
/// b = +-2 are dropped and counted in *degenerate.
std::vector<PairIdx> d4_scan(std::uint64_t p, int threads = 0, std::size_t* degenerate = nullptr);

/// Scans a-values in the given order and stops at the first accepted pair.
/// Returns false when none is accepted.
bool d4_first(std::uint64_t p, const std::vector<std::uint64_t>& a_order,
              const std::function<bool(const PairIdx&)>& accept, PairIdx* out);

} // namespace ssp4::kernels
