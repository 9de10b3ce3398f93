#pragma once

// Superspecial genus-2 curves in Rosenhain form
//
//     y^2 = x(x-1)(x-lambda)(x-mu)(x-nu),  branch points {0, 1, inf, lambda, mu, nu}.

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "ssp4/field.hpp"
#include "ssp4/poly.hpp"

namespace ssp4 {

struct RosenhainTriple
{
    FieldElement lambda, mu, nu;

    std::uint64_t p() const { return lambda.field().p(); }
    /// lambda, mu, nu not in {0, 1} and pairwise distinct.
    bool valid() const;
    /// Same set, coordinates in increasing order.
    RosenhainTriple sorted() const;
    std::array<FieldElement, 3> values() const { return {lambda, mu, nu}; }
    /// x(x-1)(x-lambda)(x-mu)(x-nu)
    Poly quintic() const;

    friend bool operator==(const RosenhainTriple& a, const RosenhainTriple& b) noexcept
    {
        return a.lambda == b.lambda && a.mu == b.mu && a.nu == b.nu;
    }
    friend std::strong_ordering operator<=>(const RosenhainTriple& a, const RosenhainTriple& b) noexcept
    {
        if (auto c = a.lambda <=> b.lambda; c != 0)
            return c;
        if (auto c = a.mu <=> b.mu; c != 0)
            return c;
        return a.nu <=> b.nu;
    }
};

/// Throws InvalidTriple.
bool rosenhain_superspecial(const RosenhainTriple& t);

enum class Backend { Kernel, Reference };

/// All superspecial ordered triples over F_{p^2}, sorted. The kernel
/// backend uses the flat F_{p^2} scan; the reference backend runs the same
/// algorithm serially on the generic field and polynomial types.
std::vector<RosenhainTriple> enumerate_rosenhain(std::uint64_t p, Backend backend = Backend::Kernel);

/// enumerate_rosenhain with a per-prime cache file under dir.
std::vector<RosenhainTriple> enumerate_rosenhain_cached(std::uint64_t p, const std::filesystem::path& dir);
void save_rosenhain_cache(const std::filesystem::path& file, std::uint64_t p, const std::vector<RosenhainTriple>& ts);
/// Absent when the file is missing, has another version or prime.
std::optional<std::vector<RosenhainTriple>> load_rosenhain_cache(const std::filesystem::path& file, std::uint64_t p);

struct Relabeling
{
    RosenhainTriple triple;
    /// Positions in (0, 1, inf, lambda, mu, nu) sent to 0, 1, inf.
    std::array<std::uint8_t, 3> chosen;
    /// Output coordinates whose value occurs in the input triple, as a bit mask.
    std::uint8_t shared_mask;
    unsigned shared_count() const noexcept { return static_cast<unsigned>(__builtin_popcount(shared_mask)); }
};

/// The 120 relabelings: for each ordered (a1, a2, a3) from the ramification
/// points, the remaining points a4, a5, a6 (in their original order) map to
/// (a_i - a1)(a2 - a3) / ((a_i - a3)(a2 - a1)), with factors involving inf
/// dropped. Throws InvalidTriple.
std::vector<Relabeling> relabelings(const RosenhainTriple& t);

/// Throws PrimeMismatch when the triples live over different primes.
bool rosenhain_isomorphic(const RosenhainTriple& t1, const RosenhainTriple& t2);

/// Smallest sorted triple in the relabeling orbit.
RosenhainTriple class_representative(const RosenhainTriple& t);
/// Distinct class representatives, sorted.
std::vector<RosenhainTriple> rosenhain_classes(const std::vector<RosenhainTriple>& ts);

} // namespace ssp4
