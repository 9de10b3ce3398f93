#include "ssp4/family_d4.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <omp.h>

#include "ssp4/errors.hpp"
#include "ssp4/hypergeom.hpp"
#include "ssp4/kernels.hpp"

namespace ssp4 {

namespace {

const FieldDesc& common_field(std::initializer_list<const FieldElement*> xs)
{
    const FieldDesc* f = &(*xs.begin())->field();
    for (const auto* x : xs) {
        if (x->field().p() != f->p())
            throw FieldMismatch("elements over different primes");
        if (x->field().contains(*f))
            f = &x->field();
    }
    return *f;
}

bool distinct_outside_01(const std::vector<FieldElement>& v)
{
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_zero() || v[i].is_one())
            return false;
        for (std::size_t j = i + 1; j < v.size(); ++j)
            if (v[i] == v[j])
                return false;
    }
    return true;
}

// Roots of u^2 + a u + 1, in increasing order, in the smallest tower field
// above the field of a that contains them.
std::pair<FieldElement, FieldElement> reciprocal_roots(const FieldElement& a)
{
    const FieldDesc* f = &a.field();
    const FieldElement disc0 = a * a - FieldElement(*f, 4);
    while (true) {
        const FieldElement disc = disc0.embed(*f);
        if (auto s = sqrt(disc)) {
            const FieldElement half = FieldElement(*f, 2).inv();
            FieldElement r1 = (-a.embed(*f) - *s) * half, r2 = (-a.embed(*f) + *s) * half;
            if (r2 < r1)
                std::swap(r1, r2);
            return {r1, r2};
        }
        if (f->degree() >= 16)
            throw RootsOutsideField("roots of u^2 + a u + 1 beyond F_{p^16}");
        f = &f->with_degree(2 * f->degree());
    }
}

// Smallest tower field above f containing a square root of x.
std::optional<FieldElement> sqrt_up_to(const FieldElement& x, const FieldDesc& top)
{
    const FieldDesc* f = &x.field();
    while (true) {
        if (auto s = sqrt(x.embed(*f)))
            return s;
        if (f->degree() >= top.degree())
            return std::nullopt;
        f = &f->with_degree(2 * f->degree());
    }
}

} // namespace

bool RosenhainPair::valid() const
{
    if (!l1.bound() || !l2.bound() || !l3.bound() || !l3p.bound())
        return false;
    const FieldDesc& f = common_field({&l1, &l2, &l3, &l3p});
    return distinct_outside_01({l1.embed(f), l2.embed(f), l3.embed(f), l3p.embed(f)});
}

CTuple cs_from_lambdas(const RosenhainPair& pair)
{
    if (!pair.valid())
        throw DegenerateConfiguration("Rosenhain pair entries must avoid {0, 1} and be distinct");
    const FieldDesc& f = common_field({&pair.l1, &pair.l2, &pair.l3, &pair.l3p});
    const FieldElement l1 = pair.l1.embed(f), l2 = pair.l2.embed(f), l3 = pair.l3.embed(f), l3p = pair.l3p.embed(f);
    const FieldElement one = FieldElement::one(f);
    CTuple c{l3p / l3, (one - l3p) / (one - l3), (l1 - l3p) / (l1 - l3), (l2 - l3p) / (l2 - l3)};
    if (!distinct_outside_01({c[0], c[1], c[2], c[3]}))
        throw DegenerateConfiguration("degenerate c-tuple");
    return c;
}

RosenhainPair lambdas_from_cs(const CTuple& cin)
{
    const FieldDesc& f = common_field({&cin[0], &cin[1], &cin[2], &cin[3]});
    const FieldElement c2 = cin[0].embed(f), c3 = cin[1].embed(f), c4 = cin[2].embed(f), c5 = cin[3].embed(f);
    if (!distinct_outside_01({c2, c3, c4, c5}))
        throw DegenerateConfiguration("c values must avoid {0, 1} and be distinct");
    const FieldElement one = FieldElement::one(f);
    const FieldElement k = (c3 - one) / (c3 - c2);
    RosenhainPair r{(c4 - c2) * k / (c4 - one), (c5 - c2) * k / (c5 - one), c2 * k, k};
    if (!r.valid())
        throw DegenerateConfiguration("degenerate Rosenhain pair");
    return r;
}

bool d4_condition(const CTuple& c)
{
    const FieldDesc& f = common_field({&c[0], &c[1], &c[2], &c[3]});
    return (c[0].embed(f) * c[1].embed(f)).is_one() && (c[2].embed(f) * c[3].embed(f)).is_one();
}

D4NormalForm D4NormalForm::from_ab(const FieldElement& a, const FieldElement& b)
{
    const FieldDesc& f = common_field({&a, &b});
    const FieldElement two(f, 2);
    const FieldElement ae = a.embed(f), be = b.embed(f);
    if (ae == be || ae == two || ae == -two || be == two || be == -two)
        throw DegenerateConfiguration("(a, b) gives a model with a repeated root");
    auto [c2, c3] = reciprocal_roots(ae);
    auto [c4, c5] = reciprocal_roots(be);
    const FieldDesc& g = common_field({&c2, &c4});
    return {f.p(), {c2.embed(g), c3.embed(g), c4.embed(g), c5.embed(g)}};
}

Poly D4NormalForm::quotient() const
{
    const FieldDesc& f = common_field({&c[0], &c[1], &c[2], &c[3]});
    Poly q = Poly::linear(FieldElement::one(f));
    for (const auto& ci : c)
        q *= Poly::linear(ci.embed(f));
    return q;
}

Poly D4NormalForm::model() const
{
    const Poly q = quotient();
    std::vector<FieldElement> coeffs(2 * q.coeffs().size() - 1, FieldElement(q.field()));
    for (std::size_t i = 0; i < q.coeffs().size(); ++i)
        coeffs[2 * i] = q.coeffs()[i];
    return Poly(q.field(), std::move(coeffs));
}

std::optional<std::pair<FieldElement, FieldElement>> D4NormalForm::ab() const
{
    if (!has_d4())
        return std::nullopt;
    const FieldDesc& f = common_field({&c[0], &c[1], &c[2], &c[3]});
    return std::pair{-(c[0].embed(f) + c[1].embed(f)), -(c[2].embed(f) + c[3].embed(f))};
}

D4NormalForm normalize_deg9(const FieldElement& A, const FieldElement& B)
{
    const FieldDesc& f = common_field({&A, &B});
    const FieldDesc& top = f.with_degree(16);
    const FieldElement Ae = A.embed(f), Be = B.embed(f);
    const FieldElement zero(f), one = FieldElement::one(f);
    Poly g(f, {zero, one, zero, Ae, zero, Be, zero, Ae, zero, one});
    if (!is_separable(g))
        throw NotSquareFree("x^9 + A x^7 + B x^5 + A x^3 + x has a repeated root");

    // x^8 + A x^6 + B x^4 + A x^2 + 1 = x^4 (w^2 + A w + B - 2), w = x^2 + x^-2
    const FieldElement At = Ae.embed(top), Bt = Be.embed(top);
    const FieldElement two(top, 2), four(top, 4), half = two.inv();
    auto sd = sqrt(At * At - four * (Bt - two));
    if (!sd)
        throw RootsOutsideField("normalization needs more than F_{p^16}");
    const FieldElement ws[2] = {(-At - *sd) * half, (-At + *sd) * half};
    FieldElement xi[2];
    for (int i = 0; i < 2; ++i) {
        // x^4 - w x^2 + 1 = 0
        auto s = sqrt(ws[i] * ws[i] - four);
        if (!s)
            throw RootsOutsideField("normalization needs more than F_{p^16}");
        const FieldElement c2 = (ws[i] + *s) * half;
        auto c = sqrt_up_to(c2, top);
        if (!c)
            throw RootsOutsideField("normalization needs more than F_{p^16}");
        const FieldElement ct = c->embed(top);
        if (ct.is_zero() || (ct * ct).is_one())
            throw DegenerateConfiguration("branch point at 0 or +-1");
        const FieldElement onet = FieldElement::one(top);
        xi[i] = (onet + ct) / (onet - ct);
    }
    const FieldElement x2 = xi[0] * xi[0], y2 = xi[1] * xi[1];
    return {f.p(), {x2, x2.inv(), y2, y2.inv()}};
}

CanonicalKey d4_key(const D4NormalForm& form)
{
    const Poly m = form.model();
    const FieldDesc& f = m.field();
    const FieldDesc& target = f.degree() >= 8 ? f.with_degree(16) : f.with_degree(8);
    return canonical_key(branch_locus(m, target));
}

AutGroup ExclusionList::label(const CanonicalKey& key) const
{
    for (const auto& [k, g] : entries)
        if (k == key)
            return g;
    return AutGroup::D4;
}

ExclusionList ExclusionList::build(std::uint64_t p, std::mt19937_64& rng)
{
    ExclusionList out;
    for (const auto& c : family_enumerate(LambdaKind::D8, p, rng)) {
        const Poly m = c.model();
        out.entries.emplace_back(canonical_key(branch_locus(m, m.field().with_degree(16))), c.aut);
    }
    for (const auto& c : family_enumerate(LambdaKind::D10, p, rng)) {
        if (c.aut != AutGroup::G40)
            continue;
        const Poly m = c.model();
        out.entries.emplace_back(canonical_key(branch_locus(m, m.field().with_degree(8))), c.aut);
    }
    return out;
}

unsigned D4Report::count(AutGroup g) const
{
    return static_cast<unsigned>(std::count_if(classes.begin(), classes.end(), [&](const D4Class& c) { return c.aut == g; }));
}

std::vector<D4Class> classify_d4(const std::vector<D4NormalForm>& forms, const ExclusionList& excl)
{
    std::vector<CanonicalKey> keys(forms.size());
    const std::int64_t n = static_cast<std::int64_t>(forms.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < n; ++i)
        keys[i] = d4_key(forms[i]);
    std::map<CanonicalKey, std::size_t> first;
    for (std::size_t i = 0; i < forms.size(); ++i)
        first.emplace(keys[i], i);
    std::vector<D4Class> out;
    for (const auto& [k, i] : first)
        out.push_back({forms[i], excl.label(k), k});
    return out;
}

namespace {

// One form per unordered {a, b}, smaller first.
std::vector<D4NormalForm> forms_from_ab(std::vector<std::pair<FieldElement, FieldElement>> abs)
{
    for (auto& [a, b] : abs)
        if (b < a)
            std::swap(a, b);
    std::sort(abs.begin(), abs.end());
    abs.erase(std::unique(abs.begin(), abs.end()), abs.end());
    std::vector<D4NormalForm> forms;
    forms.reserve(abs.size());
    for (const auto& [a, b] : abs)
        forms.push_back(D4NormalForm::from_ab(a, b));
    return forms;
}

std::vector<RosenhainTriple> step_one(std::uint64_t p, const D4Options& opt)
{
    if (opt.cache_dir)
        return enumerate_rosenhain_cached(p, *opt.cache_dir);
    return enumerate_rosenhain(p, opt.backend);
}

// Serial generic version of the (a, b) scan.
std::vector<std::pair<FieldElement, FieldElement>> direct_scan_reference(std::uint64_t p, std::size_t& degenerate)
{
    const FieldDesc& f2 = FieldDesc::get(p, 2);
    const unsigned e = static_cast<unsigned>((p - 1) / 2);
    const auto& tab = FactorialTable::get(p);
    const FieldElement one = FieldElement::one(f2), two(f2, 2), mtwo = -two;
    std::mt19937_64 rng(0);
    const unsigned ds[4] = {static_cast<unsigned>(p - 1), static_cast<unsigned>(p - 2),
                            static_cast<unsigned>(2 * p - 1), static_cast<unsigned>(2 * p - 2)};
    std::vector<std::pair<FieldElement, FieldElement>> out;
    const Poly um1 = Poly::linear(one);
    for (std::uint64_t ai = 0; ai < p * p; ++ai) {
        const FieldElement a = FieldElement::from_index(f2, ai);
        if (a == two || a == mtwo)
            continue;
        const Poly h = um1 * Poly(f2, {one, a, one});
        Poly q = Poly::constant(one);
        for (unsigned i = 0; i < e; ++i)
            q *= h;
        // u^d coefficient of q (u^2 + b u + 1)^e, as a polynomial in b
        Poly g(f2);
        for (unsigned d : ds) {
            std::vector<FieldElement> c(e + 1, FieldElement(f2));
            for (unsigned j = 0; j <= e && j <= d; ++j) {
                FieldElement s(f2);
                for (unsigned i = 0; i <= e - j && j + 2 * i <= d; ++i)
                    s += q.coeff(d - j - 2 * i).scaled(tab.binom(e - j, i));
                c[j] = s.scaled(tab.binom(e, j));
            }
            Poly E(f2, std::move(c));
            if (E.is_zero())
                continue;
            g = g.is_zero() ? E.monic() : gcd(g, E);
            if (g.degree() == 0)
                break;
        }
        if (g.is_zero())
            throw ConsistencyViolation("all Cartier-Manin entries vanish identically in b");
        if (g.degree() == 0)
            continue;
        for (const auto& b : roots_in(g, f2, rng)) {
            if (b == a || b == two || b == mtwo)
                ++degenerate;
            else
                out.emplace_back(a, b);
        }
    }
    return out;
}

} // namespace

D4Report d4_enumerate(std::uint64_t p, const D4Options& opt)
{
    D4Report rep;
    rep.p = p;
    const auto ts = step_one(p, opt);
    std::vector<RosenhainTriple> sets;
    sets.reserve(ts.size() / 6 + 1);
    for (const auto& t : ts)
        sets.push_back(t.sorted());
    std::sort(sets.begin(), sets.end());
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());

    const std::int64_t n = static_cast<std::int64_t>(sets.size());
    std::vector<std::vector<RosenhainPair>> per_thread;
    std::size_t candidates = 0;
#pragma omp parallel reduction(+ : candidates)
    {
#pragma omp single
        per_thread.resize(omp_get_num_threads());
        auto& mine = per_thread[omp_get_thread_num()];
#pragma omp for schedule(static)
        for (std::int64_t si = 0; si < n; ++si) {
            const RosenhainTriple& s = sets[si];
            const auto sv = s.values();
            for (const auto& r : relabelings(s)) {
                if (r.shared_count() != 2)
                    continue;
                ++candidates;
                if (!std::binary_search(sets.begin(), sets.end(), r.triple.sorted()))
                    continue;
                const auto rv = r.triple.values();
                FieldElement shared[2], l3p;
                int k = 0;
                for (int j = 0; j < 3; ++j) {
                    if (r.shared_mask & (1u << j))
                        shared[k++] = rv[j];
                    else
                        l3p = rv[j];
                }
                FieldElement l3;
                for (const auto& v : sv)
                    if (!(v == shared[0]) && !(v == shared[1]))
                        l3 = v;
                const RosenhainPair pair{shared[0], shared[1], l3, l3p};
                if (d4_condition(cs_from_lambdas(pair)))
                    mine.push_back(pair);
            }
        }
    }
    rep.candidates = candidates;
    std::vector<std::pair<FieldElement, FieldElement>> abs;
    for (const auto& v : per_thread)
        for (const auto& pair : v) {
            const D4NormalForm form{p, cs_from_lambdas(pair)};
            abs.push_back(*form.ab());
            if (opt.keep_pairs)
                rep.pairs.push_back(pair);
        }
    rep.stored = abs.size();
    std::mt19937_64 rng(opt.seed);
    rep.classes = classify_d4(forms_from_ab(std::move(abs)), ExclusionList::build(p, rng));
    return rep;
}

D4Report d4_enumerate_direct(std::uint64_t p, const D4Options& opt)
{
    if (p < 7 || !is_prime(p))
        throw InvalidPrime("D4 scan needs a prime p >= 7");
    D4Report rep;
    rep.p = p;
    std::vector<std::pair<FieldElement, FieldElement>> abs;
    if (opt.backend == Backend::Kernel) {
        const FieldDesc& f2 = FieldDesc::get(p, 2);
        for (const auto& pr : kernels::d4_scan(p, 0, &rep.degenerate))
            abs.emplace_back(FieldElement::from_index(f2, pr.a), FieldElement::from_index(f2, pr.b));
    } else {
        abs = direct_scan_reference(p, rep.degenerate);
    }
    rep.candidates = abs.size();
    rep.stored = abs.size();
    std::mt19937_64 rng(opt.seed);
    rep.classes = classify_d4(forms_from_ab(std::move(abs)), ExclusionList::build(p, rng));
    return rep;
}

} // namespace ssp4
