#include "ssp4/genus2.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>

#include "ssp4/cartier.hpp"
#include "ssp4/errors.hpp"
#include "ssp4/hypergeom.hpp"
#include "ssp4/kernels.hpp"

namespace ssp4 {

namespace {

constexpr const char* kCacheMagic = "ssp4-rosenhain-cache";
constexpr int kCacheVersion = 1;

void require_valid(const RosenhainTriple& t)
{
    if (!t.valid())
        throw InvalidTriple("(lambda, mu, nu) must avoid {0, 1} and be pairwise distinct");
}

} // namespace

bool RosenhainTriple::valid() const
{
    if (!lambda.bound() || !mu.bound() || !nu.bound())
        return false;
    if (&lambda.field() != &mu.field() || &mu.field() != &nu.field())
        return false;
    for (const auto& x : {lambda, mu, nu})
        if (x.is_zero() || x.is_one())
            return false;
    return !(lambda == mu) && !(mu == nu) && !(lambda == nu);
}

RosenhainTriple RosenhainTriple::sorted() const
{
    auto v = values();
    std::sort(v.begin(), v.end());
    return {v[0], v[1], v[2]};
}

Poly RosenhainTriple::quintic() const
{
    const FieldDesc& f = lambda.field();
    return Poly::x(f) * Poly::linear(FieldElement::one(f)) * Poly::linear(lambda) * Poly::linear(mu) *
           Poly::linear(nu);
}

bool rosenhain_superspecial(const RosenhainTriple& t)
{
    require_valid(t);
    return is_superspecial(HyperellipticModel(t.quintic()));
}

namespace {

std::vector<RosenhainTriple> enumerate_kernel(std::uint64_t p)
{
    const auto& f2 = FieldDesc::get(p, 2);
    std::vector<RosenhainTriple> out;
    for (const auto& t : kernels::rosenhain_scan(p))
        out.push_back({FieldElement::from_index(f2, t.lambda), FieldElement::from_index(f2, t.mu),
                       FieldElement::from_index(f2, t.nu)});
    return out;
}

std::vector<RosenhainTriple> enumerate_reference(std::uint64_t p)
{
    const auto& f2 = FieldDesc::get(p, 2);
    const unsigned e = static_cast<unsigned>((p - 1) / 2);
    const auto& tab = FactorialTable::get(p);
    const std::uint64_t N = p * p;
    // (x - nu)^e = sum_j C(e,j) x^j (-nu)^{e-j}
    std::vector<FieldElement> bin;
    for (unsigned j = 0; j <= e; ++j)
        bin.emplace_back(f2, static_cast<std::int64_t>(tab.binom(e, j)));
    std::mt19937_64 rng(0);
    const unsigned ds[4] = {static_cast<unsigned>(p - 1), static_cast<unsigned>(p - 2),
                            static_cast<unsigned>(2 * p - 1), static_cast<unsigned>(2 * p - 2)};
    std::vector<RosenhainTriple> out;
    const Poly base = Poly::x(f2) * Poly::linear(FieldElement::one(f2));
    for (std::uint64_t li = 2; li < N; ++li) {
        const auto lam = FieldElement::from_index(f2, li);
        for (std::uint64_t mi = li + 1; mi < N; ++mi) {
            const auto mu = FieldElement::from_index(f2, mi);
            const Poly h = base * Poly::linear(lam) * Poly::linear(mu);
            std::set<unsigned> wanted;
            for (unsigned d : ds)
                for (unsigned j = 0; j <= e; ++j)
                    wanted.insert(d - j);
            const auto H = power_coeffs(h, e, wanted);
            Poly g(f2);
            for (unsigned d : ds) {
                std::vector<FieldElement> c(e + 1, FieldElement(f2));
                for (unsigned j = 0; j <= e; ++j) {
                    const unsigned m = e - j;
                    const auto it = H.find(d - j);
                    if (it == H.end())
                        continue;
                    auto v = bin[j] * it->second;
                    c[m] = (m % 2) ? -v : v;
                }
                Poly E(f2, std::move(c));
                if (E.is_zero())
                    continue;
                g = g.is_zero() ? E.monic() : gcd(g, E);
                if (g.degree() == 0)
                    break;
            }
            if (g.is_zero())
                throw ConsistencyViolation("all Cartier-Manin entries vanish identically in nu");
            if (g.is_constant())
                continue;
            for (const auto& nu : roots_in(g, f2, rng)) {
                if (nu.index() <= mi)
                    continue;
                static constexpr int perm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
                const FieldElement x[3] = {lam, mu, nu};
                for (const auto& pm : perm)
                    out.push_back({x[pm[0]], x[pm[1]], x[pm[2]]});
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

std::vector<RosenhainTriple> enumerate_rosenhain(std::uint64_t p, Backend backend)
{
    if (p < 7 || !is_prime(p))
        throw InvalidPrime("Rosenhain enumeration needs a prime p >= 7");
    return backend == Backend::Kernel ? enumerate_kernel(p) : enumerate_reference(p);
}

void save_rosenhain_cache(const std::filesystem::path& file, std::uint64_t p, const std::vector<RosenhainTriple>& ts)
{
    if (file.has_parent_path())
        std::filesystem::create_directories(file.parent_path());
    const auto tmp = file.string() + ".tmp";
    {
        std::ofstream out(tmp);
        out << kCacheMagic << " v" << kCacheVersion << "\n" << "p " << p << "\n" << "count " << ts.size() << "\n";
        for (const auto& t : ts)
            out << t.lambda.to_string() << " " << t.mu.to_string() << " " << t.nu.to_string() << "\n";
        if (!out)
            throw ParseError("could not write cache file " + tmp);
    }
    std::filesystem::rename(tmp, file);
}

std::optional<std::vector<RosenhainTriple>> load_rosenhain_cache(const std::filesystem::path& file, std::uint64_t p)
{
    std::ifstream in(file);
    if (!in)
        return std::nullopt;
    std::string magic, version, key;
    std::uint64_t filep = 0;
    std::size_t count = 0;
    if (!(in >> magic >> version) || magic != kCacheMagic || version != "v" + std::to_string(kCacheVersion))
        return std::nullopt;
    if (!(in >> key >> filep) || key != "p" || filep != p)
        return std::nullopt;
    if (!(in >> key >> count) || key != "count")
        return std::nullopt;
    std::vector<RosenhainTriple> ts;
    ts.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::string a, b, c;
        if (!(in >> a >> b >> c))
            return std::nullopt;
        try {
            RosenhainTriple t{FieldElement::parse(a), FieldElement::parse(b), FieldElement::parse(c)};
            if (!t.valid() || t.p() != p)
                return std::nullopt;
            ts.push_back(t);
        } catch (const ParseError&) {
            return std::nullopt;
        }
    }
    return ts;
}

std::vector<RosenhainTriple> enumerate_rosenhain_cached(std::uint64_t p, const std::filesystem::path& dir)
{
    const auto file = dir / ("rosenhain_p" + std::to_string(p) + ".txt");
    if (auto cached = load_rosenhain_cache(file, p))
        return *cached;
    auto ts = enumerate_rosenhain(p);
    save_rosenhain_cache(file, p, ts);
    return ts;
}

namespace {

// Point of P^1 as (x0 : x1), x = x0 / x1; infinity is (1 : 0).
struct Proj
{
    FieldElement x0, x1;
};

FieldElement bracket(const Proj& a, const Proj& b) { return a.x0 * b.x1 - b.x0 * a.x1; }

} // namespace

std::vector<Relabeling> relabelings(const RosenhainTriple& t)
{
    require_valid(t);
    const FieldDesc& f = t.lambda.field();
    const FieldElement zero(f), one = FieldElement::one(f);
    const Proj pts[6] = {{zero, one}, {one, one}, {one, zero}, {t.lambda, one}, {t.mu, one}, {t.nu, one}};
    const auto in = t.values();
    std::vector<Relabeling> out;
    out.reserve(120);
    for (std::uint8_t a1 = 0; a1 < 6; ++a1)
        for (std::uint8_t a2 = 0; a2 < 6; ++a2)
            for (std::uint8_t a3 = 0; a3 < 6; ++a3) {
                if (a1 == a2 || a2 == a3 || a1 == a3)
                    continue;
                // bracket form cancels the factors through infinity
                const FieldElement k23 = bracket(pts[a2], pts[a3]);
                const FieldElement k21 = bracket(pts[a2], pts[a1]);
                FieldElement img[3];
                int n = 0;
                for (std::uint8_t i = 0; i < 6; ++i) {
                    if (i == a1 || i == a2 || i == a3)
                        continue;
                    img[n++] = bracket(pts[i], pts[a1]) * k23 / (bracket(pts[i], pts[a3]) * k21);
                }
                Relabeling r{{img[0], img[1], img[2]}, {a1, a2, a3}, 0};
                for (int j = 0; j < 3; ++j)
                    if (std::find(in.begin(), in.end(), img[j]) != in.end())
                        r.shared_mask |= static_cast<std::uint8_t>(1u << j);
                out.push_back(r);
            }
    return out;
}

bool rosenhain_isomorphic(const RosenhainTriple& t1, const RosenhainTriple& t2)
{
    if (t1.p() != t2.p())
        throw PrimeMismatch("triples over different primes");
    require_valid(t2);
    const auto target = t2.sorted();
    for (const auto& r : relabelings(t1)) {
        const auto s = r.triple.sorted();
        if (s == target)
            return true;
    }
    return false;
}

RosenhainTriple class_representative(const RosenhainTriple& t)
{
    RosenhainTriple best = t.sorted();
    for (const auto& r : relabelings(t)) {
        auto s = r.triple.sorted();
        if (s < best)
            best = s;
    }
    return best;
}

std::vector<RosenhainTriple> rosenhain_classes(const std::vector<RosenhainTriple>& ts)
{
    std::vector<RosenhainTriple> sorted_sets;
    sorted_sets.reserve(ts.size());
    for (const auto& t : ts)
        sorted_sets.push_back(t.sorted());
    std::sort(sorted_sets.begin(), sorted_sets.end());
    sorted_sets.erase(std::unique(sorted_sets.begin(), sorted_sets.end()), sorted_sets.end());
    std::vector<RosenhainTriple> reps;
    std::vector<RosenhainTriple> seen; // sorted sets already covered
    for (const auto& s : sorted_sets) {
        if (std::binary_search(seen.begin(), seen.end(), s))
            continue;
        const auto rels = relabelings(s);
        RosenhainTriple best = s;
        for (const auto& r : rels) {
            auto x = r.triple.sorted();
            if (x < best)
                best = x;
            seen.insert(std::upper_bound(seen.begin(), seen.end(), x), x);
        }
        reps.push_back(best);
    }
    std::sort(reps.begin(), reps.end());
    reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
    return reps;
}

} // namespace ssp4
