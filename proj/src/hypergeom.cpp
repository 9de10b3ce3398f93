#include "ssp4/hypergeom.hpp"

#include <map>
#include <memory>
#include <mutex>

#include "ssp4/errors.hpp"

namespace ssp4 {

FactorialTable::FactorialTable(std::uint64_t p) : p_(p), fact_(p), inv_fact_(p)
{
    fact_[0] = 1;
    for (std::uint64_t n = 1; n < p; ++n)
        fact_[n] = mod_mul(fact_[n - 1], n, p);
    inv_fact_[p - 1] = mod_inverse(fact_[p - 1], p);
    for (std::uint64_t n = p - 1; n > 0; --n)
        inv_fact_[n - 1] = mod_mul(inv_fact_[n], n, p);
}

const FactorialTable& FactorialTable::get(std::uint64_t p)
{
    static std::mutex mu;
    static std::map<std::uint64_t, std::unique_ptr<FactorialTable>> tables;
    FieldDesc::get(p, 1); // validates p
    std::lock_guard lock(mu);
    auto& slot = tables[p];
    if (!slot)
        slot = std::make_unique<FactorialTable>(p);
    return *slot;
}

FieldElement rational_mod(std::uint64_t p, std::int64_t num, std::int64_t den)
{
    const auto& f = FieldDesc::get(p, 1);
    return FieldElement(f, num) / FieldElement(f, den);
}

Poly hyper_truncation(const FieldElement& a, const FieldElement& b, const FieldElement& c, unsigned d)
{
    const FieldDesc& f = a.field();
    if (f.degree() != 1 || &b.field() != &f || &c.field() != &f)
        throw FieldMismatch("hypergeometric parameters must lie in one prime field");
    const FieldElement one = FieldElement::one(f);
    std::vector<FieldElement> g{one};
    FieldElement an = a, bn = b, cn = c, n = one;
    for (unsigned i = 1; i <= d; ++i) {
        // a terminated numerator Pochhammer ends the series
        if (g.back().is_zero())
            break;
        if (cn.is_zero() || n.is_zero())
            throw DenominatorVanishes(i);
        g.push_back(g.back() * an * bn / (cn * n));
        an += one;
        bn += one;
        cn += one;
        n += one;
    }
    g.resize(d + 1, FieldElement(f));
    return Poly(f, std::move(g));
}

Poly gamma_coeff(std::uint64_t p, unsigned k)
{
    if (k > p - 1)
        throw IndexOutOfRange("gamma index " + std::to_string(k) + " exceeds p-1");
    const auto& tab = FactorialTable::get(p);
    const auto& f = FieldDesc::get(p, 1);
    const std::int64_t e = static_cast<std::int64_t>(tab.e());
    std::vector<FieldElement> c(static_cast<std::size_t>(e) + 1, FieldElement(f));
    const bool neg = k & 1;
    for (std::int64_t n = 0; n <= static_cast<std::int64_t>(k); ++n) {
        const std::int64_t deg = e - static_cast<std::int64_t>(k) + n;
        if (deg < 0 || deg > e)
            continue;
        std::uint64_t v = mod_mul(tab.binom(e, n), tab.binom(e, k - n), p);
        if (neg && v)
            v = p - v;
        c[deg] = FieldElement(f, static_cast<std::int64_t>(v));
    }
    return Poly(f, std::move(c));
}

Poly gamma_coeff_hypergeometric(std::uint64_t p, unsigned k)
{
    if (k > p - 1)
        throw IndexOutOfRange("gamma index " + std::to_string(k) + " exceeds p-1");
    const auto& tab = FactorialTable::get(p);
    const auto& f = FieldDesc::get(p, 1);
    const std::int64_t e = static_cast<std::int64_t>(tab.e());
    const std::int64_t kk = k;
    const FieldElement half = rational_mod(p, 1, 2);
    FieldElement sign(f, (k & 1) ? -1 : 1);
    if (kk <= e) {
        auto g = hyper_truncation(half, FieldElement(f, -kk), rational_mod(p, 1 - 2 * kk, 2), k);
        auto scale = sign * FieldElement(f, static_cast<std::int64_t>(tab.binom(e, kk)));
        return Poly::monomial(scale, static_cast<unsigned>(e - kk)) * g;
    }
    auto g = hyper_truncation(half, FieldElement(f, 1 + kk), rational_mod(p, 3 + 2 * kk, 2), k);
    return g.scaled(sign * FieldElement(f, static_cast<std::int64_t>(tab.binom(e, static_cast<std::int64_t>(p) - 1 - kk))));
}

Poly gamma_coeff_fast(std::uint64_t p, unsigned k)
{
    try {
        return gamma_coeff_hypergeometric(p, k);
    } catch (const DenominatorVanishes&) {
        return gamma_coeff(p, k);
    }
}

Poly alpha_beta_poly(std::uint64_t p, unsigned r, unsigned d)
{
    if (r == 0)
        throw IndexOutOfRange("branch exponent must be positive");
    if (d > static_cast<std::uint64_t>(r) * (p - 1))
        throw IndexOutOfRange("index " + std::to_string(d) + " exceeds r(p-1)");
    if (d % r != 0)
        return Poly(FieldDesc::get(p, 1));
    return gamma_coeff(p, d / r);
}

Poly beta_poly(std::uint64_t p, unsigned r, unsigned m)
{
    const unsigned e = static_cast<unsigned>((p - 1) / 2);
    if (m < e)
        return Poly(FieldDesc::get(p, 1));
    return alpha_beta_poly(p, r, m - e);
}

std::variant<Poly, FieldElement> compute(const CoeffRequest& req)
{
    if (req.p < 5 || !is_prime(req.p))
        throw InvalidPrime("coefficient request needs an odd prime >= 5");
    if (req.k > req.p - 1)
        throw IndexOutOfRange("k must satisfy k <= p-1");
    Poly g = alpha_beta_poly(req.p, req.r, req.k * req.r);
    if (req.form == CoeffForm::Polynomial)
        return g;
    if (!req.lambda)
        throw IndexOutOfRange("evaluated request without an evaluation point");
    const FieldDesc& f = req.lambda->field();
    if (f.p() != req.p)
        throw FieldMismatch("evaluation point over a different prime");
    return g.embed(f).eval(*req.lambda);
}

} // namespace ssp4
