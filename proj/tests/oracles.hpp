#pragma once

// Brute-force oracles shared by the unit tests and the acceptance binary.
// They use only F_p arithmetic helpers from the library.

#include <algorithm>
#include <array>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "ssp4/field.hpp"
#include "ssp4/poly.hpp"

namespace oracle {

using namespace ssp4;

// Bivariate expansion of ((x^r - 1)(x^r - lambda))^e by repeated
// multiplication; entry d is the x^d coefficient as a polynomial in lambda.
inline std::vector<Poly> expand_family(std::uint64_t p, unsigned r)
{
    const auto& f = FieldDesc::get(p, 1);
    const unsigned e = static_cast<unsigned>((p - 1) / 2);
    const Poly one = Poly::from_ints(f, {1});
    const Poly lam = Poly::from_ints(f, {0, 1});
    std::vector<Poly> cur{one};
    auto times = [&](const std::vector<Poly>& a, const Poly& c0) {
        // a * (x^r + c0)
        std::vector<Poly> out(a.size() + r, Poly(f));
        for (std::size_t i = 0; i < a.size(); ++i) {
            out[i + r] += a[i];
            out[i] += a[i] * c0;
        }
        return out;
    };
    for (unsigned i = 0; i < e; ++i) {
        cur = times(cur, -one);
        cur = times(cur, -lam);
    }
    return cur;
}

// Independent F_{p^2} = F_p[t]/(t^2 - c) arithmetic on index pairs.
struct Rosenhain
{
    std::uint64_t p, c;

    explicit Rosenhain(std::uint64_t p_) : p(p_), c(0)
    {
        for (std::uint64_t a = 2; a < p; ++a)
            if (mod_pow(a, (p - 1) / 2, p) == p - 1) {
                c = a;
                break;
            }
    }
    using E = std::pair<std::uint64_t, std::uint64_t>;
    E mul(E x, E y) const
    {
        return {(x.first * y.first + c * (x.second * y.second % p)) % p, (x.first * y.second + x.second * y.first) % p};
    }
    E sub(E x, E y) const { return {(x.first + p - y.first) % p, (x.second + p - y.second) % p}; }
    E add(E x, E y) const { return {(x.first + y.first) % p, (x.second + y.second) % p}; }
    E elem(std::uint64_t n) const { return {n % p, n / p}; }

    // Naive expansion of (x(x-1)(x-l)(x-m)(x-n))^e and the four entries.
    bool superspecial(std::uint64_t l, std::uint64_t m, std::uint64_t n) const
    {
        std::vector<E> f{{0, 0}, {1, 0}};
        for (std::uint64_t r : {std::uint64_t{1}, l, m, n}) {
            const E root = elem(r);
            std::vector<E> g(f.size() + 1, {0, 0});
            for (std::size_t i = 0; i < f.size(); ++i) {
                g[i + 1] = add(g[i + 1], f[i]);
                g[i] = sub(g[i], mul(f[i], root));
            }
            f = g;
        }
        std::vector<E> acc{{1, 0}};
        for (std::uint64_t k = 0; k < (p - 1) / 2; ++k) {
            std::vector<E> g(acc.size() + f.size() - 1, {0, 0});
            for (std::size_t i = 0; i < acc.size(); ++i)
                for (std::size_t j = 0; j < f.size(); ++j)
                    g[i + j] = add(g[i + j], mul(acc[i], f[j]));
            acc = g;
        }
        for (std::uint64_t d : {p - 1, p - 2, 2 * p - 1, 2 * p - 2})
            if (d < acc.size() && acc[d] != E{0, 0})
                return false;
        return true;
    }
};

/// Every ordered superspecial triple over F_{p^2}, as index triples.
inline std::set<std::array<std::uint64_t, 3>> rosenhain_triples(std::uint64_t p)
{
    Rosenhain o(p);
    const std::uint64_t N = p * p;
    std::set<std::array<std::uint64_t, 3>> out;
    for (std::uint64_t l = 2; l < N; ++l)
        for (std::uint64_t m = l + 1; m < N; ++m)
            for (std::uint64_t n = m + 1; n < N; ++n)
                if (o.superspecial(l, m, n)) {
                    std::array<std::uint64_t, 3> a{l, m, n};
                    do
                        out.insert(a);
                    while (std::next_permutation(a.begin(), a.end()));
                }
    return out;
}

} // namespace oracle
