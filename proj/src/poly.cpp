#include "ssp4/poly.hpp"

#include <algorithm>

#include "ssp4/errors.hpp"

namespace ssp4 {

namespace {

constexpr std::size_t kKaratsubaThreshold = 32;

// out[i + j] += a[i] * b[j]; out must be sized na + nb - 1
void school_into(const FieldElement* a, std::size_t na, const FieldElement* b, std::size_t nb, FieldElement* out)
{
    for (std::size_t i = 0; i < na; ++i) {
        if (a[i].is_zero())
            continue;
        for (std::size_t j = 0; j < nb; ++j)
            out[i + j] += a[i] * b[j];
    }
}

// Product of two length-n blocks into out[0 .. 2n-1), accumulating.
void karatsuba_into(const FieldElement* a, const FieldElement* b, std::size_t n, FieldElement* out, const FieldDesc& f)
{
    if (n <= kKaratsubaThreshold) {
        school_into(a, n, b, n, out);
        return;
    }
    const std::size_t h = n / 2, hh = n - h;
    std::vector<FieldElement> z0(2 * h - 1, FieldElement(f)), z2(2 * hh - 1, FieldElement(f)),
        z1(2 * hh - 1, FieldElement(f));
    karatsuba_into(a, b, h, z0.data(), f);
    karatsuba_into(a + h, b + h, hh, z2.data(), f);
    std::vector<FieldElement> sa(a + h, a + n), sb(b + h, b + n);
    for (std::size_t i = 0; i < h; ++i) {
        sa[i] += a[i];
        sb[i] += b[i];
    }
    karatsuba_into(sa.data(), sb.data(), hh, z1.data(), f);
    for (std::size_t i = 0; i < z0.size(); ++i)
        z1[i] -= z0[i];
    for (std::size_t i = 0; i < z2.size(); ++i)
        z1[i] -= z2[i];
    for (std::size_t i = 0; i < z0.size(); ++i)
        out[i] += z0[i];
    for (std::size_t i = 0; i < z1.size(); ++i)
        out[h + i] += z1[i];
    for (std::size_t i = 0; i < z2.size(); ++i)
        out[2 * h + i] += z2[i];
}

} // namespace

Poly::Poly(const FieldDesc& f, std::vector<FieldElement> coeffs) : desc_(&f), c_(std::move(coeffs))
{
    for (const auto& c : c_)
        if (&c.field() != desc_)
            throw FieldMismatch("polynomial coefficient from a different field");
    trim();
}

Poly Poly::from_ints(const FieldDesc& f, std::initializer_list<std::int64_t> coeffs)
{
    return from_ints(f, std::vector<std::int64_t>(coeffs));
}

Poly Poly::from_ints(const FieldDesc& f, const std::vector<std::int64_t>& coeffs)
{
    std::vector<FieldElement> c;
    c.reserve(coeffs.size());
    for (auto v : coeffs)
        c.emplace_back(f, v);
    return Poly(f, std::move(c));
}

Poly Poly::constant(const FieldElement& c) { return Poly(c.field(), {c}); }

Poly Poly::monomial(const FieldElement& c, unsigned n)
{
    std::vector<FieldElement> v(n + 1, FieldElement(c.field()));
    v[n] = c;
    return Poly(c.field(), std::move(v));
}

Poly Poly::linear(const FieldElement& r) { return Poly(r.field(), {-r, FieldElement::one(r.field())}); }

const FieldDesc& Poly::field() const
{
    if (!desc_)
        throw FieldMismatch("unbound polynomial");
    return *desc_;
}

FieldElement Poly::coeff(std::size_t i) const { return i < c_.size() ? c_[i] : FieldElement(field()); }

const FieldElement& Poly::leading() const
{
    if (c_.empty())
        throw ZeroPolynomial("leading coefficient of 0");
    return c_.back();
}

void Poly::trim()
{
    while (!c_.empty() && c_.back().is_zero())
        c_.pop_back();
}

void Poly::require_same(const Poly& o) const
{
    if (desc_ != o.desc_ || !desc_)
        throw FieldMismatch("polynomials over different fields");
}

Poly Poly::monic() const
{
    if (is_zero())
        return *this;
    return scaled(leading().inv());
}

Poly Poly::derivative() const
{
    Poly r(field());
    for (std::size_t i = 1; i < c_.size(); ++i)
        r.c_.push_back(c_[i].scaled(i));
    r.trim();
    return r;
}

Poly Poly::embed(const FieldDesc& larger) const
{
    Poly r(larger);
    r.c_.reserve(c_.size());
    for (const auto& c : c_)
        r.c_.push_back(c.embed(larger));
    return r;
}

Poly Poly::scaled(const FieldElement& s) const
{
    if (&s.field() != &field())
        throw FieldMismatch("scalar from a different field");
    Poly r(*desc_);
    if (s.is_zero())
        return r;
    r.c_.reserve(c_.size());
    for (const auto& c : c_)
        r.c_.push_back(c * s);
    return r;
}

FieldElement Poly::eval(const FieldElement& x) const
{
    if (&x.field() != &field())
        throw FieldMismatch("evaluation point from a different field");
    FieldElement r(*desc_);
    for (std::size_t i = c_.size(); i-- > 0;)
        r = r * x + c_[i];
    return r;
}

Poly& Poly::operator+=(const Poly& o)
{
    require_same(o);
    if (o.c_.size() > c_.size())
        c_.resize(o.c_.size(), FieldElement(*desc_));
    for (std::size_t i = 0; i < o.c_.size(); ++i)
        c_[i] += o.c_[i];
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& o)
{
    require_same(o);
    if (o.c_.size() > c_.size())
        c_.resize(o.c_.size(), FieldElement(*desc_));
    for (std::size_t i = 0; i < o.c_.size(); ++i)
        c_[i] -= o.c_[i];
    trim();
    return *this;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly Poly::operator-() const
{
    Poly r = *this;
    for (auto& c : r.c_)
        c = -c;
    return r;
}

Poly mul_schoolbook(const Poly& a, const Poly& b)
{
    a.require_same(b);
    if (a.is_zero() || b.is_zero())
        return Poly(a.field());
    std::vector<FieldElement> out(a.c_.size() + b.c_.size() - 1, FieldElement(a.field()));
    school_into(a.c_.data(), a.c_.size(), b.c_.data(), b.c_.size(), out.data());
    return Poly(a.field(), std::move(out));
}

Poly operator*(const Poly& a, const Poly& b)
{
    a.require_same(b);
    const std::size_t na = a.c_.size(), nb = b.c_.size();
    if (std::min(na, nb) <= kKaratsubaThreshold)
        return mul_schoolbook(a, b);
    const FieldDesc& f = a.field();
    // pad both to a common length; unbalanced inputs are split into blocks
    const auto& big = na >= nb ? a.c_ : b.c_;
    const auto& small = na >= nb ? b.c_ : a.c_;
    const std::size_t n = small.size();
    std::vector<FieldElement> out(na + nb - 1, FieldElement(f));
    std::vector<FieldElement> block(n, FieldElement(f));
    std::vector<FieldElement> tmp(2 * n - 1, FieldElement(f));
    for (std::size_t off = 0; off < big.size(); off += n) {
        const std::size_t len = std::min(n, big.size() - off);
        std::fill(block.begin(), block.end(), FieldElement(f));
        std::copy(big.begin() + off, big.begin() + off + len, block.begin());
        std::fill(tmp.begin(), tmp.end(), FieldElement(f));
        karatsuba_into(block.data(), small.data(), n, tmp.data(), f);
        for (std::size_t i = 0; i < tmp.size() && off + i < out.size(); ++i)
            out[off + i] += tmp[i];
    }
    return Poly(f, std::move(out));
}

Poly mul_truncated(const Poly& a, const Poly& b, std::size_t n)
{
    Poly r = a * b;
    auto c = r.coeffs();
    if (c.size() > n)
        c.resize(n);
    return Poly(r.field(), std::move(c));
}

std::pair<Poly, Poly> divrem(const Poly& f, const Poly& g)
{
    if (g.is_zero())
        throw DivisionByZero("polynomial division by 0");
    const FieldDesc& k = f.field();
    if (&g.field() != &k)
        throw FieldMismatch("polynomials over different fields");
    if (f.degree() < g.degree())
        return {Poly(k), f};
    std::vector<FieldElement> r = f.coeffs();
    const auto& gc = g.coeffs();
    const std::size_t dg = gc.size() - 1;
    const FieldElement lead_inv = gc.back().inv();
    std::vector<FieldElement> q(r.size() - dg, FieldElement(k));
    for (std::size_t i = r.size(); i-- > dg;) {
        if (r[i].is_zero())
            continue;
        const FieldElement c = r[i] * lead_inv;
        q[i - dg] = c;
        for (std::size_t j = 0; j <= dg; ++j)
            r[i - dg + j] -= c * gc[j];
    }
    r.resize(dg);
    return {Poly(k, std::move(q)), Poly(k, std::move(r))};
}

Poly operator%(const Poly& f, const Poly& g) { return divrem(f, g).second; }

Poly gcd(const Poly& f, const Poly& g)
{
    if (f.is_zero() && g.is_zero())
        throw BothZero("gcd(0, 0)");
    Poly a = f, b = g;
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

bool is_separable(const Poly& f)
{
    if (f.is_zero())
        throw ZeroPolynomial("separability of 0");
    if (f.is_constant())
        return true;
    const Poly d = f.derivative();
    if (d.is_zero())
        return false;
    return gcd(f, d).is_constant();
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& m) { return (a * b) % m; }

Poly powmod(const Poly& base, const std::vector<bool>& bits, const Poly& m)
{
    Poly r = Poly::constant(FieldElement::one(m.field())) % m;
    const Poly b = base % m;
    for (std::size_t i = bits.size(); i-- > 0;) {
        r = mulmod(r, r, m);
        if (bits[i])
            r = mulmod(r, b, m);
    }
    return r;
}

Poly powmod(const Poly& base, std::uint64_t n, const Poly& m)
{
    std::vector<bool> bits;
    for (; n; n >>= 1)
        bits.push_back(n & 1);
    return powmod(base, bits, m);
}

std::map<unsigned, FieldElement> power_coeffs(const Poly& f, unsigned e, const std::set<unsigned>& wanted)
{
    const FieldDesc& k = f.field();
    std::map<unsigned, FieldElement> out;
    if (wanted.empty())
        return out;
    // coefficients above the largest wanted index never feed lower ones
    const std::size_t n = static_cast<std::size_t>(*wanted.rbegin()) + 1;
    Poly result = Poly::constant(FieldElement::one(k));
    Poly sq = f;
    for (unsigned m = e; m; m >>= 1) {
        if (m & 1)
            result = mul_truncated(result, sq, n);
        if (m > 1)
            sq = mul_truncated(sq, sq, n);
    }
    for (unsigned d : wanted)
        out.emplace(d, result.coeff(d));
    return out;
}

Poly rational_part(const Poly& f, const FieldDesc& target)
{
    if (f.is_zero())
        throw ZeroPolynomial("roots of 0");
    if (!target.contains(f.field()))
        throw FieldMismatch("target field does not contain the coefficient field");
    if (f.degree() <= 0)
        return Poly::constant(FieldElement::one(f.field()));
    const Poly fm = f.monic();
    // x^(p^n) mod f by n successive p-th powers
    Poly h = Poly::x(f.field()) % fm;
    for (unsigned i = 0; i < target.degree(); ++i)
        h = powmod(h, f.field().p(), fm);
    return gcd(fm, h - Poly::x(f.field()));
}

namespace {

void split_linear(const Poly& g, const FieldDesc& target, std::mt19937_64& rng, const std::vector<bool>& half,
                  std::vector<FieldElement>& out)
{
    if (g.degree() <= 0)
        return;
    if (g.degree() == 1) {
        out.push_back(-g.coeff(0) / g.coeff(1));
        return;
    }
    const Poly one = Poly::constant(FieldElement::one(target));
    for (;;) {
        const Poly shift = Poly::linear(-FieldElement::random(target, rng));
        const Poly w = powmod(shift, half, g) - one;
        if (w.is_zero())
            continue;
        const Poly d = gcd(g, w);
        if (d.degree() <= 0 || d.degree() == g.degree())
            continue;
        split_linear(d, target, rng, half, out);
        split_linear(divrem(g, d).first, target, rng, half, out);
        return;
    }
}

} // namespace

std::vector<FieldElement> roots_in(const Poly& f, const FieldDesc& target, std::mt19937_64& rng)
{
    const Poly g = rational_part(f, target).embed(target);
    std::vector<FieldElement> out;
    split_linear(g, target, rng, target.half_unit_order_bits(), out);
    std::sort(out.begin(), out.end());
    return out;
}

std::string Poly::to_string(const char* var) const
{
    if (is_zero())
        return "0";
    std::string s;
    const bool prime = desc_->degree() == 1;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i].is_zero())
            continue;
        if (!s.empty())
            s += " + ";
        std::string coef = prime ? std::to_string(c_[i].coord(0)) : "(" + c_[i].to_string() + ")";
        if (i == 0)
            s += coef;
        else {
            if (!(prime && c_[i].is_one()))
                s += coef + "*";
            s += var;
            if (i > 1)
                s += "^" + std::to_string(i);
        }
    }
    return s;
}

} // namespace ssp4
