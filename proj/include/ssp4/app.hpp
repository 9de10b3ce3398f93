#pragma once

// Top-level driver: per-prime classification, the three-step search, the
// conjecture scan, and CSV/JSON reporting.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ssp4/family_d4.hpp"
#include "ssp4/lambda_family.hpp"

namespace ssp4 {

enum class FamilyTag { D4, D8, D10, G32, G40, C18 };
std::string family_name(FamilyTag t);

/// Parameter-free curves and the congruence deciding when each is superspecial:
///   G32  y^2 = x^9 - x    p = 15, 9 mod 16
///   C18  y^2 = x^9 + 1    p = 8 mod 9
///   G40  y^2 = x^10 - 1   p = 9 mod 10
struct SpecialFlags
{
    bool g32 = false, c18 = false, g40 = false;
    friend bool operator==(const SpecialFlags&, const SpecialFlags&) = default;
};
SpecialFlags special_families(std::uint64_t p);

/// Model of a parameter-free curve over F_p. Throws std::invalid_argument for
/// tags that have a parameter.
Poly special_model(FamilyTag t, std::uint64_t p);

class CurveRecord
{
public:
    /// Verifies the model with the generic Cartier-Manin test and throws
    /// ConsistencyViolation if it is not superspecial.
    static CurveRecord make(FamilyTag family, Poly model, std::string aut);
    static CurveRecord from_lambda(const LambdaCurve& c);
    static CurveRecord from_d4(const D4Class& c);

    std::uint64_t p() const { return model_.field().p(); }
    FamilyTag family() const { return family_; }
    const Poly& model() const { return model_; }
    const std::string& aut() const { return aut_; }
    bool superspecial() const { return true; }

    /// D8/D10/G32/G40: {"p","family","lambda","aut","model"};
    /// D4: {"p","family","c","aut","model"}. Re-runs the superspecial check.
    nlohmann::json to_json() const;

private:
    FamilyTag family_ = FamilyTag::D4;
    Poly model_;
    std::string aut_;
    std::optional<FieldElement> lambda_;
    std::optional<CTuple> c_;
};

struct Counts
{
    unsigned all = 0, d4 = 0, d8 = 0, d10 = 0, g32 = 0, g40 = 0;
    friend bool operator==(const Counts&, const Counts&) = default;
};

struct PhaseTime
{
    std::string phase;
    double seconds;
};

struct EnumReport
{
    std::uint64_t p = 0;
    Counts counts;
    bool has_d4 = false; // false when the D4 phase was skipped
    std::vector<CurveRecord> representatives;
    std::vector<PhaseTime> timings;
};

struct EnumOptions
{
    bool lambda_families = true;
    bool d4 = true;
    bool records = true; // build (and verify) representatives
    D4Options d4_options;
    std::uint64_t seed = 0;
};

/// Runs the enumerators, cross-checks them against each other and against
/// special_families, and fills counts. Throws ConsistencyViolation.
EnumReport enumerate_all(std::uint64_t p, const EnumOptions& opt = {});

enum class SearchStep { SpecialCurve = 1, LambdaRoot = 2, D4Scan = 3 };

struct FindResult
{
    CurveRecord record;
    SearchStep step;
};

/// First superspecial curve found by the fast paths and then an early-exit
/// D4 scan with the a-values shuffled by seed. With d4_only, only step 3 is
/// used and hits isomorphic to a curve with a larger group are skipped.
std::optional<FindResult> find_one(std::uint64_t p, std::uint64_t seed, bool d4_only = false);

struct ConjectureReport
{
    std::vector<std::uint64_t> primes;
    std::vector<std::uint64_t> d4_empty;
    std::vector<std::string> violations;
};

/// For each prime in [pmin, pmax): a curve with Aut exactly D4 exists,
/// d8_count = 0 when p = 3 mod 8 and d10_count = 0 when p = 3, 7 mod 10.
ConjectureReport conjecture_scan(std::uint64_t pmin, std::uint64_t pmax, std::uint64_t seed = 0);

struct TableRow
{
    std::uint64_t p = 0;
    Counts counts;
    bool has_d4 = false; // D4 and All print as NA otherwise
};

struct TableOptions
{
    int jobs = 0;            // <= 0: hardware concurrency
    bool with_d4 = false;
    std::uint64_t d4_ceiling = 60;
    EnumOptions enum_options;
};

/// Rows for the primes p >= 7 in [pmin, pmax], ordered by p.
std::vector<TableRow> table_rows(std::uint64_t pmin, std::uint64_t pmax, const TableOptions& opt = {});

/// Header "p,All,D4,D8,D10,G32,G40" and one line per row.
void write_csv(std::ostream& os, const std::vector<TableRow>& rows);

/// Coefficient list "c0,c1,...,cn" (low degree first, FieldElement syntax).
Poly parse_model(std::uint64_t p, const std::string& text);

struct SelftestOptions
{
    std::vector<std::uint64_t> primes; // empty: a default sample up to 499
    std::uint64_t seed = 0;
};

/// Property suites; one line per suite and prime on os. True if all pass.
bool run_selftest(std::ostream& os, const SelftestOptions& opt = {});

} // namespace ssp4
