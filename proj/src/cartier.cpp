#include "ssp4/cartier.hpp"

#include <set>

#include "ssp4/errors.hpp"
#include "ssp4/hypergeom.hpp"

namespace ssp4 {

HyperellipticModel::HyperellipticModel(Poly f) : f_(std::move(f))
{
    const int d = f_.degree();
    if (d < 3)
        throw InvalidDegree("hyperelliptic model needs deg f >= 3, got " + std::to_string(d));
    if (!is_separable(f_))
        throw NotSquareFree("f = " + f_.to_string());
    g_ = static_cast<unsigned>((d + 1) / 2 - 1);
}

bool CMMatrix::is_zero() const noexcept
{
    for (const auto& x : m_)
        if (!x.is_zero())
            return false;
    return true;
}

std::vector<bool> CMMatrix::support() const
{
    std::vector<bool> s(m_.size());
    for (std::size_t i = 0; i < m_.size(); ++i)
        s[i] = !m_[i].is_zero();
    return s;
}

CMMatrix cm_matrix(const HyperellipticModel& model)
{
    const std::uint64_t p = model.field().p();
    const unsigned g = model.genus();
    std::set<unsigned> wanted;
    for (unsigned i = 1; i <= g; ++i)
        for (unsigned j = 1; j <= g; ++j)
            wanted.insert(static_cast<unsigned>(i * p - j));
    auto coeffs = power_coeffs(model.f(), static_cast<unsigned>((p - 1) / 2), wanted);
    std::vector<FieldElement> m;
    m.reserve(g * g);
    for (unsigned i = 1; i <= g; ++i)
        for (unsigned j = 1; j <= g; ++j)
            m.push_back(coeffs.at(static_cast<unsigned>(i * p - j)));
    return CMMatrix(p, g, std::move(m));
}

bool is_superspecial(const HyperellipticModel& model) { return cm_matrix(model).is_zero(); }

Poly family_poly(unsigned r, unsigned s, const FieldElement& lambda)
{
    const FieldDesc& f = lambda.field();
    const auto one = FieldElement::one(f);
    Poly a = Poly::monomial(one, r) - Poly::constant(one);
    Poly b = Poly::monomial(one, r) - Poly::constant(lambda);
    return Poly::monomial(one, s) * a * b;
}

CMMatrix family_cm_matrix(unsigned r, unsigned s, const FieldElement& lambda)
{
    if (s > 1)
        throw InvalidDegree("family shift must be 0 or 1");
    const FieldDesc& f = lambda.field();
    const std::uint64_t p = f.p();
    const unsigned e = static_cast<unsigned>((p - 1) / 2);
    const unsigned deg = 2 * r + s;
    const unsigned g = (deg + 1) / 2 - 1;
    std::vector<FieldElement> m;
    m.reserve(g * g);
    for (unsigned i = 1; i <= g; ++i) {
        for (unsigned j = 1; j <= g; ++j) {
            const unsigned idx = static_cast<unsigned>(i * p - j);
            // x^s contributes x^{s e}
            const bool inside = idx >= s * e && idx - s * e <= 2 * r * e;
            Poly c = inside ? alpha_beta_poly(p, r, idx - s * e) : Poly(FieldDesc::get(p, 1));
            m.push_back(c.embed(f).eval(lambda));
        }
    }
    return CMMatrix(p, g, std::move(m));
}

} // namespace ssp4
