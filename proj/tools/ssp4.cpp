// ssp4: command-line front end.
//
// Exit codes: 0 success, 1 other failure, 2 ConsistencyViolation, 3 usage.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ssp4/app.hpp"
#include "ssp4/cartier.hpp"
#include "ssp4/errors.hpp"

using namespace ssp4;

namespace {

constexpr int kConsistency = 2;
constexpr int kUsage = 3;

class UsageError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

std::uint64_t seed_from_env(std::uint64_t fallback)
{
    if (const char* s = std::getenv("SSP4_SEED")) {
        char* end = nullptr;
        const auto v = std::strtoull(s, &end, 10);
        if (end == s || *end != '\0')
            throw UsageError("SSP4_SEED must be a non-negative integer");
        return v;
    }
    return fallback;
}

std::string csv_params(const nlohmann::json& j)
{
    std::string out;
    const auto& vals = j.contains("c") ? j["c"] : nlohmann::json::array({j["lambda"]});
    for (const auto& v : vals) {
        if (!out.empty())
            out += ' ';
        out += v.is_null() ? "-" : v.get<std::string>();
    }
    return out;
}

void emit(std::ostream& os, const std::vector<CurveRecord>& recs, const std::string& format, const nlohmann::json& extra)
{
    if (format == "json") {
        nlohmann::json j = extra;
        j["curves"] = nlohmann::json::array();
        for (const auto& r : recs)
            j["curves"].push_back(r.to_json());
        os << j.dump(2) << '\n';
        return;
    }
    os << "p,family,aut,params\n";
    for (const auto& r : recs) {
        const auto j = r.to_json();
        os << r.p() << ',' << j["family"].get<std::string>() << ',' << r.aut() << ',' << csv_params(j) << '\n';
    }
}

nlohmann::json counts_json(const Counts& c, bool has_d4)
{
    nlohmann::json j;
    j["All"] = has_d4 ? nlohmann::json(c.all) : nlohmann::json(nullptr);
    j["D4"] = has_d4 ? nlohmann::json(c.d4) : nlohmann::json(nullptr);
    j["D8"] = c.d8;
    j["D10"] = c.d10;
    j["G32"] = c.g32;
    j["G40"] = c.g40;
    return j;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Superspecial hyperelliptic curves of genus 4 with many automorphisms"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    std::string cache_dir;
    app.add_option("--seed", seed, "Factorization and search seed (SSP4_SEED overrides)");
    app.add_option("--cache-dir", cache_dir, "Directory for genus-2 scan caches");

    std::uint64_t p = 0;
    std::string group = "all", format = "json", method = "direct", model;
    std::uint64_t pmin = 19, pmax = 499, ceiling = 60;
    std::string out;
    int jobs = 0;
    bool with_d4 = false;
    std::vector<std::uint64_t> primes;

    auto* count = app.add_subcommand("count", "Number of D8 or D10 classes from the gcd degree");
    count->add_option("--p", p, "Prime")->required();
    count->add_option("--group", group, "d8 or d10")->required()->check(CLI::IsMember({"d8", "d10"}));

    auto* enumerate = app.add_subcommand("enumerate", "List one curve per isomorphism class");
    enumerate->add_option("--p", p, "Prime")->required();
    enumerate->add_option("--group", group, "d4, d8, d10 or all")->check(CLI::IsMember({"d4", "d8", "d10", "all"}));
    enumerate->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    enumerate->add_option("--method", method, "D4 enumerator: direct or pairs")->check(CLI::IsMember({"direct", "pairs"}));

    auto* find = app.add_subcommand("find", "Find one superspecial curve");
    find->add_option("--p", p, "Prime")->required();

    auto* table = app.add_subcommand("table", "Class counts per prime as CSV");
    table->add_option("--pmin", pmin, "Smallest prime");
    table->add_option("--pmax", pmax, "Largest prime");
    table->add_option("--out", out, "Output file (default stdout)");
    table->add_option("--jobs", jobs, "Worker threads (0: all cores)");
    table->add_flag("--with-d4", with_d4, "Run the D4 scan for every prime");
    table->add_option("--d4-ceiling", ceiling, "Largest prime for the D4 scan without --with-d4");

    auto* verify = app.add_subcommand("verify", "Superspecial test of y^2 = f(x)");
    verify->add_option("--p", p, "Prime")->required();
    verify->add_option("--model", model, "Coefficients c0,...,cn (integers or p^k:[...])")->required();

    auto* conjecture = app.add_subcommand("conjecture", "Check the existence and vanishing statements on a range");
    conjecture->add_option("--pmin", pmin, "Smallest prime");
    conjecture->add_option("--pmax", pmax, "Scan primes below this bound");

    auto* selftest = app.add_subcommand("selftest", "Run the property suites");
    selftest->add_option("--primes", primes, "Primes to sample (default: a spread up to 499)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        seed = seed_from_env(seed);
        D4Options d4opt;
        d4opt.seed = seed;
        if (!cache_dir.empty())
            d4opt.cache_dir = cache_dir;

        if (*count) {
            const auto kind = group == "d8" ? LambdaKind::D8 : LambdaKind::D10;
            std::cout << family_count(kind, p) << '\n';
        } else if (*enumerate) {
            std::vector<CurveRecord> recs;
            nlohmann::json extra{{"p", p}};
            if (group == "all") {
                EnumOptions eo;
                eo.seed = seed;
                eo.d4_options = d4opt;
                const EnumReport rep = enumerate_all(p, eo);
                recs = rep.representatives;
                extra["counts"] = counts_json(rep.counts, rep.has_d4);
                extra["timings"] = nlohmann::json::object();
                for (const auto& t : rep.timings)
                    extra["timings"][t.phase] = t.seconds;
            } else if (group == "d4") {
                const D4Report rep = method == "pairs" ? d4_enumerate(p, d4opt) : d4_enumerate_direct(p, d4opt);
                for (const auto& c : rep.classes)
                    recs.push_back(CurveRecord::from_d4(c));
            } else {
                std::mt19937_64 rng(seed);
                for (const auto& c : family_enumerate(group == "d8" ? LambdaKind::D8 : LambdaKind::D10, p, rng))
                    recs.push_back(CurveRecord::from_lambda(c));
            }
            emit(std::cout, recs, format, extra);
        } else if (*find) {
            const auto r = find_one(p, seed);
            nlohmann::json j{{"p", p}};
            if (r) {
                j["found"] = true;
                j["step"] = static_cast<int>(r->step);
                j["curve"] = r->record.to_json();
            } else {
                j["found"] = false;
            }
            std::cout << j.dump(2) << '\n';
        } else if (*table) {
            TableOptions to;
            to.jobs = jobs;
            to.with_d4 = with_d4;
            to.d4_ceiling = ceiling;
            to.enum_options.seed = seed;
            to.enum_options.d4_options = d4opt;
            const auto rows = table_rows(pmin, pmax, to);
            if (out.empty()) {
                write_csv(std::cout, rows);
            } else {
                std::ofstream f(out);
                if (!f)
                    throw std::runtime_error("cannot open " + out);
                write_csv(f, rows);
            }
        } else if (*verify) {
            const HyperellipticModel m(parse_model(p, model));
            const CMMatrix cm = cm_matrix(m);
            nlohmann::json j{{"p", p}, {"genus", m.genus()}, {"superspecial", cm.is_zero()}};
            j["cartier_manin"] = nlohmann::json::array();
            for (unsigned i = 1; i <= cm.genus(); ++i) {
                nlohmann::json row = nlohmann::json::array();
                for (unsigned k = 1; k <= cm.genus(); ++k)
                    row.push_back(cm.at(i, k).to_string());
                j["cartier_manin"].push_back(row);
            }
            std::cout << j.dump(2) << '\n';
        } else if (*conjecture) {
            const auto rep = conjecture_scan(pmin, pmax, seed);
            nlohmann::json j{{"pmin", pmin}, {"pmax", pmax}, {"primes", rep.primes.size()},
                             {"d4_empty", rep.d4_empty}, {"violations", rep.violations}};
            std::cout << j.dump(2) << '\n';
            if (!rep.violations.empty())
                return 1;
        } else if (*selftest) {
            SelftestOptions so;
            so.primes = primes;
            so.seed = seed;
            return run_selftest(std::cout, so) ? 0 : 1;
        }
    } catch (const ConsistencyViolation& e) {
        std::cerr << e.what() << '\n';
        return kConsistency;
    } catch (const UsageError& e) {
        std::cerr << e.what() << '\n';
        return kUsage;
    } catch (const ParseError& e) {
        std::cerr << e.what() << '\n';
        return kUsage;
    } catch (const InvalidPrime& e) {
        std::cerr << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << e.what() << '\n';
        return 1;
    }
    return 0;
}
