#include "ssp4/kernels.hpp"

#include <algorithm>

#include <omp.h>

#include "ssp4/errors.hpp"
#include "ssp4/field.hpp"

namespace ssp4::kernels {

Fp2Ops::Fp2Ops(std::uint64_t p) : p_(p)
{
    if (p >= kMaxKernelPrime)
        throw InvalidPrime("scan kernels need p < 2^20, got " + std::to_string(p));
    c_ = FieldDesc::get(p, 2).tower_constant(0)[0];
}

Fp2 Fp2Ops::inv(Fp2 x) const
{
    const std::uint64_t n = (x.a * x.a % p_ + p_ - c_ * (x.b * x.b % p_) % p_) % p_;
    const std::uint64_t ni = mod_inverse(n, p_);
    return {x.a * ni % p_, (x.b ? p_ - x.b : 0) * ni % p_};
}

void trim(Fp2Poly& f)
{
    while (!f.empty() && f.back().is_zero())
        f.pop_back();
}

namespace {

// f mod g, g monic, in place
void rem_monic(const Fp2Ops& k, Fp2Poly& f, const Fp2Poly& g)
{
    const std::size_t dg = g.size() - 1;
    while (f.size() > dg) {
        const Fp2 c = f.back();
        const std::size_t off = f.size() - 1 - dg;
        if (!c.is_zero())
            for (std::size_t j = 0; j < dg; ++j)
                f[off + j] = k.sub(f[off + j], k.mul(c, g[j]));
        f.pop_back();
    }
    trim(f);
}

void make_monic(const Fp2Ops& k, Fp2Poly& f)
{
    const Fp2 li = k.inv(f.back());
    for (auto& c : f)
        c = k.mul(c, li);
}

Fp2Poly mulmod(const Fp2Ops& k, const Fp2Poly& a, const Fp2Poly& b, const Fp2Poly& m)
{
    if (a.empty() || b.empty())
        return {};
    std::vector<Fp2Ops::Acc> acc(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            k.fma(acc[i + j], a[i], b[j]);
    Fp2Poly out(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i)
        out[i] = k.finish(acc[i]);
    rem_monic(k, out, m);
    return out;
}

Fp2Poly powmod(const Fp2Ops& k, const Fp2Poly& base, std::uint64_t n, const Fp2Poly& m)
{
    Fp2Poly r{{1, 0}};
    rem_monic(k, r, m);
    Fp2Poly b = base;
    rem_monic(k, b, m);
    for (int bit = 63; bit >= 0; --bit) {
        r = mulmod(k, r, r, m);
        if ((n >> bit) & 1)
            r = mulmod(k, r, b, m);
    }
    return r;
}

Fp2Poly divide_exact(const Fp2Ops& k, Fp2Poly f, const Fp2Poly& g)
{
    // g monic
    const std::size_t dg = g.size() - 1;
    Fp2Poly q(f.size() - dg);
    for (std::size_t i = f.size(); i-- > dg;) {
        const Fp2 c = f[i];
        q[i - dg] = c;
        if (!c.is_zero())
            for (std::size_t j = 0; j <= dg; ++j)
                f[i - dg + j] = k.sub(f[i - dg + j], k.mul(c, g[j]));
    }
    return q;
}

void split(const Fp2Ops& k, const Fp2Poly& g, std::uint64_t& seed, std::vector<Fp2>& out)
{
    if (g.size() <= 1)
        return;
    if (g.size() == 2) {
        out.push_back(k.neg(g[0])); // monic
        return;
    }
    const std::uint64_t half = (k.order() - 1) / 2;
    for (;;) {
        const Fp2 delta = k.from_index(seed++ % k.order());
        Fp2Poly w = powmod(k, Fp2Poly{delta, {1, 0}}, half, g);
        if (w.empty())
            continue;
        w[0] = k.sub(w[0], {1, 0});
        trim(w);
        if (w.empty())
            continue;
        Fp2Poly d = gcd(k, g, w);
        if (d.size() <= 1 || d.size() == g.size())
            continue;
        split(k, d, seed, out);
        split(k, divide_exact(k, g, d), seed, out);
        return;
    }
}

} // namespace

Fp2Poly gcd(const Fp2Ops& k, Fp2Poly f, Fp2Poly g)
{
    trim(f);
    trim(g);
    if (f.size() < g.size())
        std::swap(f, g);
    while (!g.empty()) {
        make_monic(k, g);
        rem_monic(k, f, g);
        std::swap(f, g);
    }
    if (!f.empty())
        make_monic(k, f);
    return f;
}

std::vector<Fp2> roots(const Fp2Ops& k, const Fp2Poly& f0)
{
    Fp2Poly f = f0;
    trim(f);
    if (f.empty())
        throw ZeroPolynomial("roots of 0");
    if (f.size() == 1)
        return {};
    make_monic(k, f);
    Fp2Poly xq = powmod(k, Fp2Poly{{0, 0}, {1, 0}}, k.order(), f);
    xq.resize(std::max<std::size_t>(xq.size(), 2));
    xq[1] = k.sub(xq[1], {1, 0});
    trim(xq);
    Fp2Poly g = gcd(k, f, xq);
    std::vector<Fp2> out;
    std::uint64_t seed = 1;
    split(k, g, seed, out);
    std::sort(out.begin(), out.end(), Fp2Ops::less);
    return out;
}

namespace {

struct Binomials
{
    unsigned e;
    std::vector<std::uint64_t> t;
    Binomials(std::uint64_t p, unsigned e_) : e(e_), t((e_ + 1) * (e_ + 1), 0)
    {
        for (unsigned n = 0; n <= e; ++n) {
            t[n * (e + 1)] = 1;
            for (unsigned j = 1; j <= n; ++j)
                t[n * (e + 1) + j] = (t[(n - 1) * (e + 1) + j - 1] + (j < n ? t[(n - 1) * (e + 1) + j] : 0)) % p;
        }
    }
    std::uint64_t operator()(unsigned n, unsigned j) const { return j > n ? 0 : t[n * (e + 1) + j]; }
};

// q^e for q = t - s x + x^2 and t != 0; degree 2e = p-1 keeps every
// divisor n+1 invertible.
void quadratic_power(const Fp2Ops& k, Fp2 s, Fp2 t, unsigned e, const std::vector<std::uint64_t>& inv_int,
                     Fp2Poly& q)
{
    const std::uint64_t p = k.p();
    q.assign(2 * e + 1, Fp2{});
    Fp2 te{1, 0}, base = t;
    for (unsigned m = e; m; m >>= 1) {
        if (m & 1)
            te = k.mul(te, base);
        base = k.mul(base, base);
    }
    q[0] = te;
    const Fp2 tinv = k.inv(t);
    for (unsigned n = 0; n < 2 * e; ++n) {
        // t (n+1) q[n+1] = s (n-e) q[n] + (2e-n+1) q[n-1]
        const std::uint64_t ne = (n + p - e) % p;
        Fp2 v = k.scale(k.mul(s, q[n]), ne);
        if (n >= 1)
            v = k.add(v, k.scale(q[n - 1], (2 * e - n + 1) % p));
        q[n + 1] = k.scale(k.mul(v, tinv), inv_int[n + 1]);
    }
}

std::vector<std::uint64_t> small_inverses(std::uint64_t p, std::size_t n)
{
    std::vector<std::uint64_t> inv(n + 1, 0);
    if (n >= 1)
        inv[1] = 1;
    for (std::size_t i = 2; i <= n; ++i)
        inv[i] = (p - (p / i) * inv[p % i] % p) % p;
    return inv;
}

} // namespace

std::vector<TripleIdx> rosenhain_scan(std::uint64_t p, int threads)
{
    const Fp2Ops k(p);
    const unsigned e = static_cast<unsigned>((p - 1) / 2);
    const Binomials bin(p, e);
    const auto inv_int = small_inverses(p, 2 * e + 1);
    // A = (x(x-1))^e, nonzero for indices e .. 2e
    std::vector<std::uint64_t> A(2 * e + 1, 0);
    for (unsigned j = 0; j <= e; ++j) {
        const std::uint64_t c = bin(e, j);
        A[e + j] = ((e - j) % 2) ? (p - c) % p : c;
    }
    const std::uint64_t N = k.order();
    const unsigned ds[4] = {static_cast<unsigned>(p - 1), static_cast<unsigned>(p - 2),
                            static_cast<unsigned>(2 * p - 1), static_cast<unsigned>(2 * p - 2)};
    std::vector<std::vector<TripleIdx>> per_thread;
    bool degenerate = false;
#pragma omp parallel num_threads(threads > 0 ? threads : omp_get_max_threads())
    {
#pragma omp single
        per_thread.resize(omp_get_num_threads());
        auto& out = per_thread[omp_get_thread_num()];
        Fp2Poly q, H(4 * e + 2), E[4];
        auto entry = [&](unsigned d, Fp2Poly& poly) {
            // coefficient of nu^{e-j}: C(e,j) (-1)^{e-j} H[d-j]
            poly.assign(e + 1, Fp2{});
            for (unsigned j = 0; j <= e; ++j) {
                const unsigned m = e - j;
                Fp2 v = k.scale(H[d - j], bin(e, j));
                poly[m] = (m % 2) ? k.neg(v) : v;
            }
        };
        auto fill_H = [&](unsigned lo, unsigned hi) {
            for (unsigned idx = lo; idx <= hi; ++idx) {
                Fp2Ops::Acc acc;
                const unsigned i0 = std::max(e, idx >= 2 * e ? idx - 2 * e : 0u);
                const unsigned i1 = std::min(2 * e, idx);
                for (unsigned i = i0; i <= i1; ++i)
                    k.fma(acc, q[idx - i], A[i]);
                H[idx] = k.finish(acc);
            }
        };
#pragma omp for schedule(dynamic, 4)
        for (std::int64_t li = 2; li < static_cast<std::int64_t>(N); ++li) {
            const Fp2 lam = k.from_index(static_cast<std::uint64_t>(li));
            for (std::uint64_t mi = static_cast<std::uint64_t>(li) + 1; mi < N; ++mi) {
                const Fp2 mu = k.from_index(mi);
                quadratic_power(k, k.add(lam, mu), k.mul(lam, mu), e, inv_int, q);
                fill_H(ds[1] - e, ds[0]);
                entry(ds[0], E[0]);
                entry(ds[1], E[1]);
                Fp2Poly g = gcd(k, E[0], E[1]);
                if (g.size() == 1)
                    continue;
                fill_H(ds[3] - e, ds[2]);
                entry(ds[2], E[2]);
                entry(ds[3], E[3]);
                g = gcd(k, g, E[2]);
                if (g.size() == 1)
                    continue;
                g = gcd(k, g, E[3]);
                if (g.size() == 1)
                    continue;
                if (g.empty()) {
                    // every nu would work; impossible for a valid (lambda, mu)
#pragma omp atomic write
                    degenerate = true;
                    continue;
                }
                for (const Fp2& nu : roots(k, g)) {
                    const std::uint64_t ni = k.index(nu);
                    // report each set once, from its two smallest members
                    if (ni > mi)
                        out.push_back({static_cast<std::uint64_t>(li), mi, ni});
                }
            }
        }
    }
    if (degenerate)
        throw ConsistencyViolation("all Cartier-Manin entries vanish identically in nu");
    std::vector<TripleIdx> all;
    for (const auto& v : per_thread)
        for (const auto& t : v) {
            const std::uint64_t x[3] = {t.lambda, t.mu, t.nu};
            static constexpr int perm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
            for (const auto& pm : perm)
                all.push_back({x[pm[0]], x[pm[1]], x[pm[2]]});
        }
    std::sort(all.begin(), all.end(), [](const TripleIdx& a, const TripleIdx& b) {
        return std::tie(a.lambda, a.mu, a.nu) < std::tie(b.lambda, b.mu, b.nu);
    });
    return all;
}

D4Scanner::D4Scanner(std::uint64_t p) : k_(p), e_(static_cast<unsigned>((p - 1) / 2))
{
    const Binomials bin(p, e_);
    binom_ = bin.t;
    inv_int_ = small_inverses(p, 2 * e_ + 1);
    um1_e_.assign(e_ + 1, Fp2{});
    for (unsigned j = 0; j <= e_; ++j) {
        const std::uint64_t c = bin(e_, j);
        um1_e_[j] = {((e_ - j) % 2) ? (p - c) % p : c, 0};
    }
}

Fp2Poly D4Scanner::entry(const Fp2Poly& q, unsigned d) const
{
    // coefficient of b^j: C(e,j) sum_i C(e-j,i) Q[d-j-2i]
    const unsigned e = e_;
    auto C = [&](unsigned n, unsigned j) { return j > n ? 0 : binom_[n * (e + 1) + j]; };
    Fp2Poly out(e + 1);
    for (unsigned j = 0; j <= e; ++j) {
        Fp2Ops::Acc acc;
        for (unsigned i = 0; i <= e - j; ++i) {
            const std::int64_t idx = static_cast<std::int64_t>(d) - j - 2 * i;
            if (idx < 0)
                break;
            if (static_cast<std::size_t>(idx) >= q.size())
                continue;
            k_.fma(acc, q[idx], C(e - j, i));
        }
        out[j] = k_.scale(k_.finish(acc), C(e, j));
    }
    return out;
}

std::vector<Fp2> D4Scanner::partners(Fp2 a) const
{
    const std::uint64_t p = k_.p();
    const unsigned e = e_;
    // (u^2 + a u + 1)^e, i.e. s = -a, t = 1
    Fp2Poly q2;
    quadratic_power(k_, k_.neg(a), {1, 0}, e, inv_int_, q2);
    // Q_a = (u-1)^e (u^2+au+1)^e
    std::vector<Fp2Ops::Acc> acc(3 * e + 1);
    for (unsigned i = 0; i <= e; ++i)
        for (unsigned j = 0; j <= 2 * e; ++j)
            k_.fma(acc[i + j], q2[j], um1_e_[i].a);
    Fp2Poly Q(3 * e + 1);
    for (unsigned i = 0; i <= 3 * e; ++i)
        Q[i] = k_.finish(acc[i]);
    const unsigned ds[4] = {static_cast<unsigned>(p - 1), static_cast<unsigned>(p - 2),
                            static_cast<unsigned>(2 * p - 1), static_cast<unsigned>(2 * p - 2)};
    Fp2Poly g = gcd(k_, entry(Q, ds[0]), entry(Q, ds[1]));
    if (g.size() == 1)
        return {};
    g = gcd(k_, g, entry(Q, ds[2]));
    if (g.size() == 1)
        return {};
    g = gcd(k_, g, entry(Q, ds[3]));
    if (g.size() == 1)
        return {};
    if (g.empty())
        throw ConsistencyViolation("all Cartier-Manin entries vanish identically in b");
    return roots(k_, g);
}

namespace {

bool pair_ok(const Fp2Ops& k, Fp2 a, Fp2 b)
{
    const Fp2 two{2 % k.p(), 0}, mtwo = k.neg(two);
    return !(b == a) && !(b == two) && !(b == mtwo);
}

} // namespace

std::vector<PairIdx> d4_scan(std::uint64_t p, int threads, std::size_t* degenerate)
{
    const D4Scanner scan(p);
    const Fp2Ops& k = scan.ops();
    const Fp2 two{2, 0}, mtwo = k.neg(two);
    const std::int64_t N = static_cast<std::int64_t>(k.order());
    std::vector<std::vector<PairIdx>> per_thread;
    bool failed = false;
    std::size_t skipped = 0;
#pragma omp parallel num_threads(threads > 0 ? threads : omp_get_max_threads()) reduction(+ : skipped)
    {
#pragma omp single
        per_thread.resize(omp_get_num_threads());
        auto& out = per_thread[omp_get_thread_num()];
#pragma omp for schedule(dynamic, 8)
        for (std::int64_t ai = 0; ai < N; ++ai) {
            const Fp2 a = k.from_index(static_cast<std::uint64_t>(ai));
            if (a == two || a == mtwo)
                continue;
            std::vector<Fp2> bs;
            try {
                bs = scan.partners(a);
            } catch (const Error&) {
#pragma omp atomic write
                failed = true;
            }
            for (const Fp2& b : bs) {
                if (pair_ok(k, a, b))
                    out.push_back({static_cast<std::uint64_t>(ai), k.index(b)});
                else
                    ++skipped;
            }
        }
    }
    if (failed)
        throw ConsistencyViolation("all Cartier-Manin entries vanish identically in b");
    if (degenerate)
        *degenerate = skipped;
    std::vector<PairIdx> all;
    for (const auto& v : per_thread)
        all.insert(all.end(), v.begin(), v.end());
    std::sort(all.begin(), all.end(),
              [](const PairIdx& x, const PairIdx& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
    return all;
}

bool d4_first(std::uint64_t p, const std::vector<std::uint64_t>& a_order,
              const std::function<bool(const PairIdx&)>& accept, PairIdx* out)
{
    const D4Scanner scan(p);
    const Fp2Ops& k = scan.ops();
    const Fp2 two{2, 0}, mtwo = k.neg(two);
    for (std::uint64_t ai : a_order) {
        const Fp2 a = k.from_index(ai);
        if (a == two || a == mtwo)
            continue;
        for (const Fp2& b : scan.partners(a)) {
            if (!pair_ok(k, a, b))
                continue;
            const PairIdx pr{ai, k.index(b)};
            if (accept(pr)) {
                if (out)
                    *out = pr;
                return true;
            }
        }
    }
    return false;
}

} // namespace ssp4::kernels
