#include "ssp4/app.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include <omp.h>

#include "ssp4/cartier.hpp"
#include "ssp4/errors.hpp"
#include "ssp4/hypergeom.hpp"
#include "ssp4/iso4.hpp"
#include "ssp4/kernels.hpp"

namespace ssp4 {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void require_prime(std::uint64_t p)
{
    if (p < 7 || !is_prime(p))
        throw InvalidPrime("expected a prime p >= 7, got " + std::to_string(p));
}

FamilyTag tag_of(const LambdaCurve& c)
{
    switch (c.aut) {
    case AutGroup::G32:
        return FamilyTag::G32;
    case AutGroup::G40:
        return FamilyTag::G40;
    default:
        return c.kind == LambdaKind::D8 ? FamilyTag::D8 : FamilyTag::D10;
    }
}

nlohmann::json element_json(const FieldElement& x) { return x.to_string(); }

std::vector<std::uint64_t> primes_in(std::uint64_t lo, std::uint64_t hi_inclusive)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = std::max<std::uint64_t>(lo, 7); p <= hi_inclusive; ++p)
        if (is_prime(p))
            out.push_back(p);
    return out;
}

} // namespace

std::string family_name(FamilyTag t)
{
    switch (t) {
    case FamilyTag::D4:
        return "D4";
    case FamilyTag::D8:
        return "D8";
    case FamilyTag::D10:
        return "D10";
    case FamilyTag::G32:
        return "G32";
    case FamilyTag::G40:
        return "G40";
    case FamilyTag::C18:
        return "C18";
    }
    return "?";
}

SpecialFlags special_families(std::uint64_t p)
{
    return {p % 16 == 15 || p % 16 == 9, p % 9 == 8, p % 10 == 9};
}

Poly special_model(FamilyTag t, std::uint64_t p)
{
    const FieldDesc& f = FieldDesc::get(p, 1);
    switch (t) {
    case FamilyTag::G32:
        return Poly::from_ints(f, {0, -1, 0, 0, 0, 0, 0, 0, 0, 1});
    case FamilyTag::C18:
        return Poly::from_ints(f, {1, 0, 0, 0, 0, 0, 0, 0, 0, 1});
    case FamilyTag::G40:
        return Poly::from_ints(f, {-1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1});
    default:
        throw std::invalid_argument("family " + family_name(t) + " has a parameter");
    }
}

// ---------------------------------------------------------------------------
// CurveRecord

CurveRecord CurveRecord::make(FamilyTag family, Poly model, std::string aut)
{
    if (!is_superspecial(HyperellipticModel(model)))
        throw ConsistencyViolation("record for a curve that is not superspecial: " + model.to_string());
    CurveRecord r;
    r.family_ = family;
    r.model_ = std::move(model);
    r.aut_ = std::move(aut);
    return r;
}

CurveRecord CurveRecord::from_lambda(const LambdaCurve& c)
{
    CurveRecord r = make(tag_of(c), c.model(), aut_name(c.aut));
    r.lambda_ = c.lambda;
    return r;
}

CurveRecord CurveRecord::from_d4(const D4Class& c)
{
    CurveRecord r = make(FamilyTag::D4, c.form.model(), aut_name(c.aut));
    r.c_ = c.form.c;
    return r;
}

nlohmann::json CurveRecord::to_json() const
{
    if (!is_superspecial(HyperellipticModel(model_)))
        throw ConsistencyViolation("stored record no longer verifies: " + model_.to_string());
    nlohmann::json j;
    j["p"] = p();
    j["family"] = family_name(family_);
    if (c_) {
        j["c"] = nlohmann::json::array();
        for (const auto& x : *c_)
            j["c"].push_back(element_json(x));
    } else if (lambda_) {
        j["lambda"] = element_json(*lambda_);
    } else {
        j["lambda"] = nullptr;
    }
    j["aut"] = aut_;
    j["model"] = nlohmann::json::array();
    for (int i = 0; i <= model_.degree(); ++i)
        j["model"].push_back(element_json(model_.coeff(static_cast<std::size_t>(i))));
    j["superspecial"] = true;
    return j;
}

// ---------------------------------------------------------------------------
// enumerate_all

EnumReport enumerate_all(std::uint64_t p, const EnumOptions& opt)
{
    require_prime(p);
    EnumReport rep;
    rep.p = p;
    const SpecialFlags flags = special_families(p);
    std::mt19937_64 rng(opt.seed);

    for (LambdaKind kind : {LambdaKind::D8, LambdaKind::D10}) {
        const auto& fam = LambdaFamily::get(kind);
        const auto t0 = Clock::now();
        const auto curves = family_enumerate(kind, p, rng);
        const unsigned predicted = family_count(kind, p);
        unsigned generic = 0;
        bool special = false;
        for (const auto& c : curves) {
            generic += c.aut == fam.generic;
            special = special || c.aut == fam.special;
            if (opt.records)
                rep.representatives.push_back(CurveRecord::from_lambda(c));
        }
        if (generic != predicted)
            throw ConsistencyViolation(std::string(fam.tag()) + " roots give " + std::to_string(generic) +
                                       " classes but the gcd degree gives " + std::to_string(predicted));
        const bool expected = kind == LambdaKind::D8 ? flags.g32 : flags.g40;
        if (special != expected)
            throw ConsistencyViolation(std::string(fam.tag()) + ": lambda = -1 " + (special ? "is" : "is not") +
                                       " a root, against the congruence test at p = " + std::to_string(p));
        (kind == LambdaKind::D8 ? rep.counts.d8 : rep.counts.d10) = generic;
        (kind == LambdaKind::D8 ? rep.counts.g32 : rep.counts.g40) = special;
        rep.timings.push_back({std::string(fam.tag()), seconds_since(t0)});
    }

    if (opt.d4) {
        const auto t0 = Clock::now();
        const D4Report d4 = d4_enumerate_direct(p, opt.d4_options);
        rep.counts.d4 = d4.count(AutGroup::D4);
        // every curve with a larger group than D4 must show up in the scan
        // with the label the lambda families gave it
        const Counts seen{0, 0, d4.count(AutGroup::D8), 0, d4.count(AutGroup::G32), d4.count(AutGroup::G40)};
        if (seen.d8 != rep.counts.d8 || seen.g32 != rep.counts.g32 || seen.g40 != rep.counts.g40)
            throw ConsistencyViolation("D4 scan labels (D8 " + std::to_string(seen.d8) + ", G32 " +
                                       std::to_string(seen.g32) + ", G40 " + std::to_string(seen.g40) +
                                       ") disagree with the lambda families at p = " + std::to_string(p));
        if (opt.records)
            for (const auto& c : d4.classes)
                if (c.aut == AutGroup::D4)
                    rep.representatives.push_back(CurveRecord::from_d4(c));
        rep.has_d4 = true;
        rep.timings.push_back({"D4", seconds_since(t0)});
    }
    const Counts& c = rep.counts;
    rep.counts.all = c.d4 + c.d8 + c.d10 + c.g32 + c.g40;
    return rep;
}

// ---------------------------------------------------------------------------
// find_one

std::optional<FindResult> find_one(std::uint64_t p, std::uint64_t seed, bool d4_only)
{
    require_prime(p);
    std::mt19937_64 rng(seed);
    if (!d4_only) {
        // step 1: parameter-free curves, decided by p alone
        const SpecialFlags flags = special_families(p);
        if (flags.g32)
            return FindResult{CurveRecord::make(FamilyTag::G32, special_model(FamilyTag::G32, p), aut_name(AutGroup::G32)),
                              SearchStep::SpecialCurve};
        if (flags.g40)
            return FindResult{CurveRecord::make(FamilyTag::G40, special_model(FamilyTag::G40, p), aut_name(AutGroup::G40)),
                              SearchStep::SpecialCurve};

        // step 2: one root of F or G other than -1
        for (LambdaKind kind : {LambdaKind::D8, LambdaKind::D10}) {
            if (family_count(kind, p) == 0)
                continue;
            const auto& fam = LambdaFamily::get(kind);
            for (const auto& c : family_enumerate(kind, p, rng))
                if (c.aut == fam.generic)
                    return FindResult{CurveRecord::from_lambda(c), SearchStep::LambdaRoot};
        }
    }

    // step 3: (a, b) scan in a random a-order, stopping at the first hit
    const FieldDesc& f2 = FieldDesc::get(p, 2);
    std::vector<std::uint64_t> order(p * p);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);

    std::optional<ExclusionList> excl;
    if (d4_only)
        excl = ExclusionList::build(p, rng);
    std::optional<D4Class> found;
    auto accept = [&](const kernels::PairIdx& pr) {
        const D4NormalForm form =
            D4NormalForm::from_ab(FieldElement::from_index(f2, pr.a), FieldElement::from_index(f2, pr.b));
        CanonicalKey key = d4_key(form);
        const AutGroup aut = excl ? excl->label(key) : ExclusionList{}.label(key);
        if (d4_only && aut != AutGroup::D4)
            return false;
        found = D4Class{form, aut, std::move(key)};
        return true;
    };
    if (!kernels::d4_first(p, order, accept, nullptr))
        return std::nullopt;
    if (!d4_only) {
        // label the hit properly for the record
        auto full = ExclusionList::build(p, rng);
        found->aut = full.label(found->key);
    }
    return FindResult{CurveRecord::from_d4(*found), SearchStep::D4Scan};
}

// ---------------------------------------------------------------------------
// conjecture_scan

ConjectureReport conjecture_scan(std::uint64_t pmin, std::uint64_t pmax, std::uint64_t seed)
{
    ConjectureReport rep;
    if (pmax == 0)
        return rep;
    rep.primes = primes_in(pmin, pmax - 1);
    const std::size_t n = rep.primes.size();
    std::vector<char> empty(n, 0);
    std::vector<std::string> notes(n);
    std::exception_ptr err;

#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t i = 0; i < n; ++i) {
        try {
            const std::uint64_t p = rep.primes[i];
            empty[i] = !find_one(p, seed + p, true).has_value();
            if (p % 8 == 3 && family_count(LambdaKind::D8, p) != 0)
                notes[i] += "p = " + std::to_string(p) + " = 3 mod 8 but d8_count = " +
                            std::to_string(family_count(LambdaKind::D8, p)) + "\n";
            if ((p % 10 == 3 || p % 10 == 7) && family_count(LambdaKind::D10, p) != 0)
                notes[i] += "p = " + std::to_string(p) + " = " + std::to_string(p % 10) + " mod 10 but d10_count = " +
                            std::to_string(family_count(LambdaKind::D10, p)) + "\n";
            if (empty[i] && p >= 19 && p != 41)
                notes[i] += "p = " + std::to_string(p) + ": no curve with automorphism group D4\n";
        } catch (...) {
#pragma omp critical
            if (!err)
                err = std::current_exception();
        }
    }
    if (err)
        std::rethrow_exception(err);

    for (std::size_t i = 0; i < n; ++i) {
        if (empty[i])
            rep.d4_empty.push_back(rep.primes[i]);
        std::size_t pos = 0, nl;
        while ((nl = notes[i].find('\n', pos)) != std::string::npos) {
            rep.violations.push_back(notes[i].substr(pos, nl - pos));
            pos = nl + 1;
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// table

std::vector<TableRow> table_rows(std::uint64_t pmin, std::uint64_t pmax, const TableOptions& opt)
{
    const auto primes = primes_in(pmin, pmax);
    std::vector<TableRow> rows(primes.size());
    std::exception_ptr err;
    const int jobs = opt.jobs > 0 ? opt.jobs : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
    for (std::size_t i = 0; i < primes.size(); ++i) {
        try {
            EnumOptions eo = opt.enum_options;
            eo.records = false;
            eo.d4 = opt.with_d4 || primes[i] <= opt.d4_ceiling;
            const EnumReport r = enumerate_all(primes[i], eo);
            rows[i] = {primes[i], r.counts, r.has_d4};
        } catch (...) {
#pragma omp critical
            if (!err)
                err = std::current_exception();
        }
    }
    if (err)
        std::rethrow_exception(err);
    return rows;
}

void write_csv(std::ostream& os, const std::vector<TableRow>& rows)
{
    os << "p,All,D4,D8,D10,G32,G40\n";
    for (const auto& r : rows) {
        os << r.p << ',';
        if (r.has_d4)
            os << r.counts.all << ',' << r.counts.d4;
        else
            os << "NA,NA";
        os << ',' << r.counts.d8 << ',' << r.counts.d10 << ',' << r.counts.g32 << ',' << r.counts.g40 << '\n';
    }
}

// ---------------------------------------------------------------------------
// parse_model

Poly parse_model(std::uint64_t p, const std::string& text)
{
    if (!is_prime(p))
        throw ParseError("modulus " + std::to_string(p) + " is not prime");
    // split on commas outside brackets
    std::vector<std::string> toks;
    std::string cur;
    int depth = 0;
    for (char ch : text) {
        if (ch == '[')
            ++depth;
        if (ch == ']')
            --depth;
        if (ch == ',' && depth == 0) {
            toks.push_back(cur);
            cur.clear();
        } else if (ch != ' ') {
            cur += ch;
        }
    }
    toks.push_back(cur);

    std::vector<FieldElement> cs;
    const FieldDesc* f = &FieldDesc::get(p, 1);
    for (const auto& t : toks) {
        if (t.empty())
            throw ParseError("empty coefficient in '" + text + "'");
        if (t.find(':') != std::string::npos) {
            FieldElement x = FieldElement::parse(t);
            if (x.field().p() != p)
                throw ParseError("coefficient " + t + " is not over F_" + std::to_string(p));
            if (x.field().contains(*f))
                f = &x.field();
            cs.push_back(std::move(x));
        } else {
            std::size_t used = 0;
            long long v = 0;
            try {
                v = std::stoll(t, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != t.size())
                throw ParseError("bad coefficient '" + t + "'");
            cs.emplace_back(FieldDesc::get(p, 1), v);
        }
    }
    for (auto& x : cs) {
        if (!f->contains(x.field()))
            throw ParseError("coefficients do not lie in a common tower field");
        x = x.embed(*f);
    }
    return Poly(*f, std::move(cs));
}

// ---------------------------------------------------------------------------
// selftest

namespace {

struct Suite
{
    std::ostream& os;
    bool ok = true;

    void report(const std::string& name, std::uint64_t p, bool pass, const std::string& detail = {})
    {
        ok = ok && pass;
        os << (pass ? "PASS " : "FAIL ") << name << " p=" << p;
        if (!detail.empty())
            os << " (" << detail << ')';
        os << '\n';
    }

    template <class F>
    void run(const std::string& name, std::uint64_t p, F&& body)
    {
        std::string detail;
        bool pass = false;
        try {
            pass = body(detail);
        } catch (const std::exception& e) {
            detail = e.what();
        }
        report(name, p, pass, detail);
    }
};

bool cor_identity(std::uint64_t p, std::string& detail)
{
    const unsigned e = static_cast<unsigned>((p - 1) / 2);
    const FieldDesc& f = FieldDesc::get(p, 1);
    for (unsigned r : {4u, 5u})
        for (unsigned k = 0; k <= e; ++k) {
            const Poly lhs = alpha_beta_poly(p, r, (e - k) * r);
            const Poly rhs = Poly::monomial(FieldElement::one(f), k) * alpha_beta_poly(p, r, (e + k) * r);
            if (!(lhs == rhs)) {
                detail = "r=" + std::to_string(r) + " k=" + std::to_string(k);
                return false;
            }
        }
    return true;
}

bool gcd_roots(std::uint64_t p, std::string& detail, std::mt19937_64& rng)
{
    const FieldDesc& f4 = FieldDesc::get(p, 4);
    for (LambdaKind kind : {LambdaKind::D8, LambdaKind::D10}) {
        const char* tag = LambdaFamily::get(kind).tag();
        const Poly g = family_gcd(kind, p);
        if (g.degree() <= 0)
            continue;
        if (!is_separable(g)) {
            detail = std::string(tag) + " gcd not separable";
            return false;
        }
        auto roots = roots_in(g, f4, rng);
        if (roots.size() != static_cast<std::size_t>(g.degree())) {
            detail = std::string(tag) + ": " + std::to_string(roots.size()) + " of " + std::to_string(g.degree()) +
                     " roots in F_{p^4}";
            return false;
        }
        std::sort(roots.begin(), roots.end());
        for (const auto& l : roots)
            if (!std::binary_search(roots.begin(), roots.end(), l.inv())) {
                detail = std::string(tag) + ": 1/lambda missing for " + l.to_string();
                return false;
            }
    }
    return true;
}

bool cm_shapes(std::uint64_t p, std::string& detail, std::mt19937_64& rng)
{
    const FieldDesc& f2 = FieldDesc::get(p, 2);
    for (LambdaKind kind : {LambdaKind::D8, LambdaKind::D10}) {
        const auto& fam = LambdaFamily::get(kind);
        const auto shape = cm_shape(kind, p);
        for (int it = 0; it < 2; ++it) {
            FieldElement l = FieldElement::random(f2, rng);
            if (l.is_zero() || l.is_one())
                continue;
            const CMMatrix m = cm_matrix(HyperellipticModel(family_poly(fam.r, fam.s, l)));
            for (unsigned i = 1; i <= 4; ++i)
                for (unsigned j = 1; j <= 4; ++j)
                    if (j != shape[i - 1] && !m.at(i, j).is_zero()) {
                        detail = std::string(fam.tag()) + " entry (" + std::to_string(i) + "," + std::to_string(j) + ")";
                        return false;
                    }
        }
    }
    return true;
}

bool iso_rule(std::uint64_t p, std::string& detail, std::mt19937_64& rng)
{
    const FieldDesc& f2 = FieldDesc::get(p, 2);
    const FieldDesc& f8 = FieldDesc::get(p, 8);
    for (LambdaKind kind : {LambdaKind::D8, LambdaKind::D10}) {
        const auto& fam = LambdaFamily::get(kind);
        auto draw = [&] {
            while (true) {
                FieldElement m = FieldElement::random(f2, rng);
                if (m.is_zero())
                    continue;
                // fifth powers keep the D10 branch points in F_{p^8}
                FieldElement l = kind == LambdaKind::D10 ? m.pow(5) : m;
                if (!l.is_one() && !(l * l).is_one())
                    return l;
            }
        };
        for (int it = 0; it < 6; ++it) {
            const FieldElement l1 = draw(), l2 = it % 2 ? l1.inv() : draw();
            const bool expected = l1 == l2 || l1 == l2.inv();
            const Poly a = LambdaCurve{p, kind, l1, fam.generic}.model();
            const Poly b = LambdaCurve{p, kind, l2, fam.generic}.model();
            if (hyperelliptic_iso(a, b, f8) != expected) {
                detail = std::string(fam.tag()) + " lambda " + l1.to_string() + ", " + l2.to_string();
                return false;
            }
        }
    }
    return true;
}

bool outputs_verify(std::uint64_t p, std::string& detail, std::mt19937_64& rng, bool with_d4)
{
    std::size_t n = 0;
    for (LambdaKind kind : {LambdaKind::D8, LambdaKind::D10})
        for (const auto& c : family_enumerate(kind, p, rng)) {
            if (!is_superspecial(HyperellipticModel(c.model()))) {
                detail = std::string(LambdaFamily::get(kind).tag()) + " lambda " + c.lambda.to_string();
                return false;
            }
            ++n;
        }
    if (with_d4)
        for (const auto& c : d4_enumerate_direct(p).classes) {
            if (!is_superspecial(HyperellipticModel(c.form.model()))) {
                detail = "D4 class " + c.form.model().to_string();
                return false;
            }
            ++n;
        }
    detail = std::to_string(n) + " curves";
    return true;
}

} // namespace

bool run_selftest(std::ostream& os, const SelftestOptions& opt)
{
    std::vector<std::uint64_t> primes = opt.primes;
    if (primes.empty())
        primes = {7, 11, 19, 23, 29, 31, 41, 73, 89, 137, 199, 263, 331, 409, 487, 499};
    Suite s{os};
    std::mt19937_64 rng(opt.seed);
    for (std::uint64_t p : primes) {
        if (p < 7 || !is_prime(p)) {
            s.report("prime", p, false, "not a prime >= 7");
            continue;
        }
        s.run("alpha-symmetry", p, [&](std::string& d) { return cor_identity(p, d); });
        s.run("gcd-roots", p, [&](std::string& d) { return gcd_roots(p, d, rng); });
        s.run("cm-shape", p, [&](std::string& d) { return cm_shapes(p, d, rng); });
        s.run("iso-rule", p, [&](std::string& d) { return iso_rule(p, d, rng); });
        s.run("outputs-superspecial", p, [&](std::string& d) { return outputs_verify(p, d, rng, p <= 47); });
    }
    return s.ok;
}

} // namespace ssp4
