#include "ssp4/field.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <memory>
#include <mutex>

#include "ssp4/errors.hpp"

namespace ssp4 {

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t d : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % d == 0)
            return n == d;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // deterministic for 64-bit inputs
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = mod_pow(a, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mod_mul(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

std::uint64_t mod_pow(std::uint64_t a, std::uint64_t n, std::uint64_t p)
{
    std::uint64_t r = 1 % p;
    a %= p;
    while (n) {
        if (n & 1)
            r = mod_mul(r, a, p);
        a = mod_mul(a, a, p);
        n >>= 1;
    }
    return r;
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p)
{
    a %= p;
    if (a == 0)
        throw DivisionByZero("inverse of 0 mod " + std::to_string(p));
    __int128 t = 0, nt = 1;
    __int128 r = p, nr = a;
    while (nr != 0) {
        __int128 q = r / nr;
        __int128 tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (t < 0)
        t += p;
    return static_cast<std::uint64_t>(t);
}

int legendre(std::uint64_t a, std::uint64_t p)
{
    a %= p;
    if (a == 0)
        return 0;
    return mod_pow(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

// ---------------------------------------------------------------------------
// Tower

struct FieldDesc::Tower
{
    std::uint64_t p;
    // constants[i] = c_{i+1} in L_i, 2^i significant coordinates
    std::array<Coords, kMaxLevel> constants{};
    std::array<std::unique_ptr<FieldDesc>, kMaxLevel + 1> levels;
};

using u64 = std::uint64_t;

/// Raw coordinate arithmetic at a fixed tower level.
struct TowerOps
{
    const FieldDesc::Tower& t;

    u64 add1(u64 a, u64 b) const noexcept
    {
        u64 s = a + b;
        return s >= t.p ? s - t.p : s;
    }
    u64 sub1(u64 a, u64 b) const noexcept { return a >= b ? a - b : a + t.p - b; }

    void add(unsigned n, const u64* a, const u64* b, u64* out) const noexcept
    {
        for (unsigned i = 0; i < n; ++i)
            out[i] = add1(a[i], b[i]);
    }
    void sub(unsigned n, const u64* a, const u64* b, u64* out) const noexcept
    {
        for (unsigned i = 0; i < n; ++i)
            out[i] = sub1(a[i], b[i]);
    }

    // out may alias neither a nor b
    void mul(unsigned level, const u64* a, const u64* b, u64* out) const noexcept
    {
        if (level == 0) {
            out[0] = mod_mul(a[0], b[0], t.p);
            return;
        }
        if (level == 1) {
            const u64 p = t.p;
            u64 a0b0 = mod_mul(a[0], b[0], p);
            u64 a1b1 = mod_mul(a[1], b[1], p);
            u64 cross = mod_mul(add1(a[0], a[1]), add1(b[0], b[1]), p);
            out[0] = add1(a0b0, mod_mul(a1b1, t.constants[0][0], p));
            out[1] = sub1(sub1(cross, a0b0), a1b1);
            return;
        }
        const unsigned h = 1u << (level - 1);
        u64 t0[kMaxDegree / 2], t1[kMaxDegree / 2], t2[kMaxDegree / 2], sa[kMaxDegree / 2], sb[kMaxDegree / 2];
        mul(level - 1, a, b, t0);
        mul(level - 1, a + h, b + h, t1);
        add(h, a, a + h, sa);
        add(h, b, b + h, sb);
        mul(level - 1, sa, sb, t2);
        mul(level - 1, t1, t.constants[level - 1].data(), sa);
        for (unsigned i = 0; i < h; ++i) {
            out[i] = add1(t0[i], sa[i]);
            out[h + i] = sub1(sub1(t2[i], t0[i]), t1[i]);
        }
    }

    void sqr(unsigned level, const u64* a, u64* out) const noexcept { mul(level, a, a, out); }

    bool is_zero(unsigned n, const u64* a) const noexcept
    {
        for (unsigned i = 0; i < n; ++i)
            if (a[i])
                return false;
        return true;
    }

    // a0^2 - c a1^2 over L_{level-1}
    void norm_step(unsigned level, const u64* a, u64* out) const noexcept
    {
        const unsigned h = 1u << (level - 1);
        u64 s0[kMaxDegree / 2], s1[kMaxDegree / 2], s2[kMaxDegree / 2];
        sqr(level - 1, a, s0);
        sqr(level - 1, a + h, s1);
        mul(level - 1, s1, t.constants[level - 1].data(), s2);
        sub(h, s0, s2, out);
    }

    void inv(unsigned level, const u64* a, u64* out) const
    {
        if (level == 0) {
            out[0] = mod_inverse(a[0], t.p);
            return;
        }
        const unsigned h = 1u << (level - 1);
        u64 n[kMaxDegree / 2], ni[kMaxDegree / 2], neg[kMaxDegree / 2];
        norm_step(level, a, n);
        if (is_zero(h, n))
            throw DivisionByZero("inverse of zero field element");
        inv(level - 1, n, ni);
        mul(level - 1, a, ni, out);
        for (unsigned i = 0; i < h; ++i)
            neg[i] = a[h + i] ? t.p - a[h + i] : 0;
        mul(level - 1, neg, ni, out + h);
    }

    u64 norm_to_prime(unsigned level, const u64* a) const noexcept
    {
        u64 cur[kMaxDegree], nxt[kMaxDegree];
        std::copy(a, a + (1u << level), cur);
        for (unsigned l = level; l > 0; --l) {
            norm_step(l, cur, nxt);
            std::copy(nxt, nxt + (1u << (l - 1)), cur);
        }
        return cur[0];
    }

    bool is_square(unsigned level, const u64* a) const noexcept
    {
        if (is_zero(1u << level, a))
            return true;
        return legendre(norm_to_prime(level, a), t.p) == 1;
    }
};

namespace {

std::mutex& registry_mutex()
{
    static std::mutex m;
    return m;
}

// Integer representative n -> coordinates, base p little endian.
void index_to_coords(std::uint64_t p, unsigned n_coords, std::uint64_t n, u64* out)
{
    for (unsigned i = 0; i < n_coords; ++i) {
        out[i] = n % p;
        n /= p;
    }
}

unsigned level_of(unsigned k)
{
    switch (k) {
    case 1: return 0;
    case 2: return 1;
    case 4: return 2;
    case 8: return 3;
    case 16: return 4;
    default: throw InvalidDegree("extension degree must be 1, 2, 4, 8 or 16, got " + std::to_string(k));
    }
}

} // namespace

const FieldDesc& FieldDesc::get(std::uint64_t p, unsigned k)
{
    const unsigned level = level_of(k);
    std::lock_guard lock(registry_mutex());
    static std::map<std::uint64_t, std::unique_ptr<Tower>> reg;
    auto it = reg.find(p);
    if (it == reg.end()) {
        if (p < 5 || !is_prime(p))
            throw InvalidPrime("field characteristic must be a prime >= 5, got " + std::to_string(p));
        if (p >= (1ull << 62))
            throw InvalidPrime("characteristic must be below 2^62");
        auto tower = std::make_unique<Tower>();
        tower->p = p;
        TowerOps ops{*tower};
        // Constants chosen bottom-up; level i's constant lives in L_i. For
        // i >= 1 every element of L_{i-1} is a square in L_i, so the smallest
        // non-square has the form t_i + a with a in L_{i-1}.
        for (unsigned i = 0; i < kMaxLevel; ++i) {
            const unsigned n = 1u << i;
            u64 cand[kMaxDegree] = {};
            if (i == 0) {
                for (cand[0] = 1; ops.is_square(0, cand); ++cand[0]) {
                }
            } else {
                for (std::uint64_t low = 0;; ++low) {
                    std::fill(cand, cand + n, 0);
                    index_to_coords(p, n / 2, low, cand);
                    cand[n / 2] = 1;
                    if (!ops.is_square(i, cand))
                        break;
                }
            }
            std::copy(cand, cand + n, tower->constants[i].begin());
        }
        for (unsigned l = 0; l <= kMaxLevel; ++l)
            tower->levels[l].reset(new FieldDesc(p, l, tower.get()));
        it = reg.emplace(p, std::move(tower)).first;
    }
    return *it->second->levels[level];
}

const FieldDesc& FieldDesc::subfield(unsigned m) const
{
    const unsigned l = level_of(m);
    if (l > level_)
        throw InvalidDegree(std::to_string(m) + " does not divide " + std::to_string(degree()));
    return *tower_->levels[l];
}

std::span<const std::uint64_t> FieldDesc::tower_constant(unsigned i) const
{
    if (i >= level_)
        throw InvalidDegree("tower constant index out of range");
    return {tower_->constants[i].data(), 1u << i};
}

namespace {

// little-endian base 2^32 limbs
std::vector<std::uint32_t> big_pow(std::uint64_t p, unsigned k)
{
    std::vector<std::uint32_t> limbs{1};
    for (unsigned i = 0; i < k; ++i) {
        unsigned __int128 carry = 0;
        for (auto& l : limbs) {
            unsigned __int128 v = static_cast<unsigned __int128>(l) * p + carry;
            l = static_cast<std::uint32_t>(v);
            carry = v >> 32;
        }
        while (carry) {
            limbs.push_back(static_cast<std::uint32_t>(carry));
            carry >>= 32;
        }
    }
    return limbs;
}

std::vector<bool> limb_bits(const std::vector<std::uint32_t>& limbs)
{
    std::vector<bool> bits;
    for (auto l : limbs)
        for (int b = 0; b < 32; ++b)
            bits.push_back((l >> b) & 1u);
    while (!bits.empty() && !bits.back())
        bits.pop_back();
    return bits;
}

} // namespace

std::vector<bool> FieldDesc::order_bits() const { return limb_bits(big_pow(p_, degree())); }

std::vector<bool> FieldDesc::half_unit_order_bits() const
{
    auto limbs = big_pow(p_, degree());
    // p^k is odd: subtract one clears bit 0, then shift right
    limbs[0] -= 1;
    for (std::size_t i = 0; i < limbs.size(); ++i) {
        limbs[i] >>= 1;
        if (i + 1 < limbs.size())
            limbs[i] |= (limbs[i + 1] & 1u) << 31;
    }
    return limb_bits(limbs);
}

// ---------------------------------------------------------------------------
// FieldElement

FieldElement::FieldElement(const FieldDesc& f, std::int64_t value) : desc_(&f)
{
    const auto p = static_cast<std::int64_t>(f.p() > static_cast<std::uint64_t>(INT64_MAX) ? 0 : f.p());
    std::int64_t v = p ? value % p : value;
    if (v < 0)
        v += p;
    c_[0] = static_cast<std::uint64_t>(v);
}

FieldElement FieldElement::from_coords(const FieldDesc& f, std::span<const std::uint64_t> coords)
{
    if (coords.size() > f.degree())
        throw FieldMismatch("too many coordinates for " + std::to_string(f.p()) + "^" + std::to_string(f.degree()));
    FieldElement r(f);
    for (std::size_t i = 0; i < coords.size(); ++i)
        r.c_[i] = coords[i] % f.p();
    return r;
}

FieldElement FieldElement::random(const FieldDesc& f, std::mt19937_64& rng)
{
    FieldElement r(f);
    std::uniform_int_distribution<std::uint64_t> dist(0, f.p() - 1);
    for (unsigned i = 0; i < f.degree(); ++i)
        r.c_[i] = dist(rng);
    return r;
}

FieldElement FieldElement::from_index(const FieldDesc& f, std::uint64_t n)
{
    FieldElement r(f);
    index_to_coords(f.p(), f.degree(), n, r.c_.data());
    return r;
}

std::uint64_t FieldElement::index() const
{
    std::uint64_t n = 0;
    for (unsigned i = degree(); i-- > 0;)
        n = n * field().p() + c_[i];
    return n;
}

const FieldDesc& FieldElement::field() const
{
    if (!desc_)
        throw FieldMismatch("unbound field element");
    return *desc_;
}

unsigned FieldElement::degree() const noexcept { return desc_ ? desc_->degree() : 0; }

void FieldElement::require_same(const FieldElement& o) const
{
    if (desc_ != o.desc_ || !desc_)
        throw FieldMismatch("operands live in different fields");
}

bool FieldElement::is_zero() const noexcept
{
    for (unsigned i = 0; i < degree(); ++i)
        if (c_[i])
            return false;
    return true;
}

bool FieldElement::is_one() const noexcept
{
    if (!desc_ || c_[0] != 1)
        return false;
    for (unsigned i = 1; i < degree(); ++i)
        if (c_[i])
            return false;
    return true;
}

FieldElement& FieldElement::operator+=(const FieldElement& o)
{
    require_same(o);
    TowerOps{*desc_->tower_}.add(degree(), c_.data(), o.c_.data(), c_.data());
    return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o)
{
    require_same(o);
    TowerOps{*desc_->tower_}.sub(degree(), c_.data(), o.c_.data(), c_.data());
    return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o)
{
    require_same(o);
    u64 out[kMaxDegree];
    TowerOps{*desc_->tower_}.mul(desc_->level(), c_.data(), o.c_.data(), out);
    std::copy(out, out + degree(), c_.begin());
    return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& o)
{
    return *this *= o.inv();
}

FieldElement FieldElement::operator-() const
{
    FieldElement r(field());
    for (unsigned i = 0; i < degree(); ++i)
        r.c_[i] = c_[i] ? desc_->p() - c_[i] : 0;
    return r;
}

FieldElement FieldElement::scaled(std::uint64_t s) const
{
    FieldElement r(field());
    s %= desc_->p();
    for (unsigned i = 0; i < degree(); ++i)
        r.c_[i] = mod_mul(c_[i], s, desc_->p());
    return r;
}

FieldElement FieldElement::inv() const
{
    if (is_zero())
        throw DivisionByZero("inverse of zero in " + std::to_string(field().p()) + "^" + std::to_string(degree()));
    FieldElement r(*desc_);
    TowerOps{*desc_->tower_}.inv(desc_->level(), c_.data(), r.c_.data());
    return r;
}

FieldElement FieldElement::pow(std::uint64_t n) const
{
    FieldElement base = *this;
    FieldElement r = one(field());
    while (n) {
        if (n & 1)
            r *= base;
        base *= base;
        n >>= 1;
    }
    return r;
}

FieldElement FieldElement::pow_bits(const std::vector<bool>& bits) const
{
    FieldElement r = one(field());
    for (std::size_t i = bits.size(); i-- > 0;) {
        r *= r;
        if (bits[i])
            r *= *this;
    }
    return r;
}

FieldElement FieldElement::embed(const FieldDesc& larger) const
{
    if (!larger.contains(field()))
        throw FieldMismatch("target field does not contain the element's field");
    FieldElement r(larger);
    r.c_ = c_;
    return r;
}

std::optional<FieldElement> FieldElement::restrict_to(const FieldDesc& smaller) const
{
    if (!field().contains(smaller))
        throw FieldMismatch("restriction target is not a subfield");
    for (unsigned i = smaller.degree(); i < degree(); ++i)
        if (c_[i])
            return std::nullopt;
    FieldElement r(smaller);
    std::copy(c_.begin(), c_.begin() + smaller.degree(), r.c_.begin());
    return r;
}

bool operator==(const FieldElement& a, const FieldElement& b) noexcept
{
    if (!a.desc_ || !b.desc_)
        return a.desc_ == b.desc_;
    return a.desc_->p() == b.desc_->p() && a.c_ == b.c_;
}

std::strong_ordering operator<=>(const FieldElement& a, const FieldElement& b) noexcept
{
    for (unsigned i = kMaxDegree; i-- > 0;) {
        if (a.c_[i] != b.c_[i])
            return a.c_[i] < b.c_[i] ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

std::string FieldElement::to_string() const
{
    std::string s = std::to_string(field().p()) + "^" + std::to_string(degree()) + ":[";
    for (unsigned i = 0; i < degree(); ++i) {
        if (i)
            s += ',';
        s += std::to_string(c_[i]);
    }
    s += ']';
    return s;
}

namespace {

std::uint64_t parse_u64(std::string_view s)
{
    while (!s.empty() && s.front() == ' ')
        s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ')
        s.remove_suffix(1);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        throw ParseError("bad integer '" + std::string(s) + "'");
    return v;
}

} // namespace

FieldElement FieldElement::parse(std::string_view text)
{
    const auto caret = text.find('^');
    const auto colon = text.find(':');
    if (caret == std::string_view::npos || colon == std::string_view::npos || colon < caret)
        throw ParseError("expected p^k:[...], got '" + std::string(text) + "'");
    const auto p = parse_u64(text.substr(0, caret));
    const auto k = static_cast<unsigned>(parse_u64(text.substr(caret + 1, colon - caret - 1)));
    auto body = text.substr(colon + 1);
    if (body.size() < 2 || body.front() != '[' || body.back() != ']')
        throw ParseError("expected bracketed coordinate list in '" + std::string(text) + "'");
    body = body.substr(1, body.size() - 2);
    const FieldDesc& f = FieldDesc::get(p, k);
    std::vector<std::uint64_t> coords;
    while (!body.empty()) {
        auto comma = body.find(',');
        auto tok = body.substr(0, comma);
        const auto v = parse_u64(tok);
        if (v >= p)
            throw ParseError("coordinate not reduced mod p in '" + std::string(text) + "'");
        coords.push_back(v);
        if (comma == std::string_view::npos)
            break;
        body.remove_prefix(comma + 1);
    }
    if (coords.size() != k)
        throw ParseError("expected " + std::to_string(k) + " coordinates in '" + std::string(text) + "'");
    return from_coords(f, coords);
}

// ---------------------------------------------------------------------------

bool is_square(const FieldElement& x)
{
    const auto& f = x.field();
    return legendre(norm_to_prime(x), f.p()) != -1;
}

std::uint64_t norm_to_prime(const FieldElement& x)
{
    const auto& f = x.field();
    FieldElement cur = x;
    for (unsigned l = f.level(); l > 0; --l) {
        const FieldDesc& below = f.subfield(1u << (l - 1));
        const unsigned h = below.degree();
        auto a0 = FieldElement::from_coords(below, std::span(cur.coords()).subspan(0, h));
        auto a1 = FieldElement::from_coords(below, std::span(cur.coords()).subspan(h, h));
        auto c = FieldElement::from_coords(below, f.tower_constant(l - 1));
        cur = a0 * a0 - c * a1 * a1;
    }
    return cur.coord(0);
}

namespace {

std::optional<std::uint64_t> sqrt_prime(std::uint64_t a, std::uint64_t p, std::uint64_t nonresidue)
{
    a %= p;
    if (a == 0)
        return 0;
    if (legendre(a, p) != 1)
        return std::nullopt;
    // Tonelli-Shanks
    std::uint64_t q = p - 1;
    unsigned s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    std::uint64_t z = mod_pow(nonresidue, q, p);
    std::uint64_t x = mod_pow(a, (q + 1) / 2, p);
    std::uint64_t t = mod_pow(a, q, p);
    unsigned m = s;
    while (t != 1) {
        unsigned i = 0;
        std::uint64_t tt = t;
        while (tt != 1) {
            tt = mod_mul(tt, tt, p);
            ++i;
        }
        std::uint64_t b = z;
        for (unsigned j = 0; j + i + 1 < m; ++j)
            b = mod_mul(b, b, p);
        x = mod_mul(x, b, p);
        z = mod_mul(b, b, p);
        t = mod_mul(t, z, p);
        m = i;
    }
    return x;
}

// some square root of x, any sign
std::optional<FieldElement> sqrt_any(const FieldElement& x)
{
    const FieldDesc& f = x.field();
    if (f.level() == 0) {
        auto r = sqrt_prime(x.coord(0), f.p(), f.with_degree(2).tower_constant(0)[0]);
        if (!r)
            return std::nullopt;
        return FieldElement(f, static_cast<std::int64_t>(*r));
    }
    if (x.is_zero())
        return x;
    if (!is_square(x))
        return std::nullopt;
    const FieldDesc& below = f.subfield(f.degree() / 2);
    const unsigned h = below.degree();
    auto a = FieldElement::from_coords(below, std::span(x.coords()).subspan(0, h));
    auto b = FieldElement::from_coords(below, std::span(x.coords()).subspan(h, h));
    auto c = FieldElement::from_coords(below, f.tower_constant(f.level() - 1));
    const auto half = FieldElement(below, 2).inv();
    auto assemble = [&](const FieldElement& u, const FieldElement& v) {
        std::vector<std::uint64_t> coords(u.coords().begin(), u.coords().end());
        coords.insert(coords.end(), v.coords().begin(), v.coords().end());
        return FieldElement::from_coords(f, coords);
    };
    if (b.is_zero()) {
        if (auto r = sqrt_any(a))
            return assemble(*r, FieldElement(below));
        // a is a non-square in the subfield, a/c is a square
        auto r = sqrt_any(a / c);
        return assemble(FieldElement(below), *r);
    }
    auto n = sqrt_any(a * a - c * b * b);
    // x square in f implies its relative norm is a square in the subfield
    if (!n)
        return std::nullopt;
    for (const auto& delta : {(a + *n) * half, (a - *n) * half}) {
        if (delta.is_zero())
            continue;
        if (auto u = sqrt_any(delta)) {
            auto v = b * half / *u;
            return assemble(*u, v);
        }
    }
    return std::nullopt;
}

} // namespace

std::optional<FieldElement> sqrt(const FieldElement& x)
{
    auto r = sqrt_any(x);
    if (!r)
        return std::nullopt;
    auto neg = -*r;
    return neg < *r ? neg : *r;
}

FieldElement frobenius(const FieldElement& x, unsigned i)
{
    FieldElement r = x;
    const auto p = x.field().p();
    for (unsigned j = 0; j < i; ++j)
        r = r.pow(p);
    return r;
}

bool in_subfield(const FieldElement& x, unsigned m)
{
    const auto k = x.field().degree();
    if (m == 0 || k % m != 0)
        throw InvalidDegree(std::to_string(m) + " does not divide " + std::to_string(k));
    return frobenius(x, m) == x;
}

} // namespace ssp4
