#include "aeq/splitting.hpp"

#include "aeq/rng.hpp"
#include "aeq/version.hpp"

#include <json.hpp>

#include <algorithm>
#include <thread>

namespace aeq {

namespace {

constexpr unsigned kCertificatePrimes = 200;

std::vector<unsigned long> first_primes(unsigned count) {
    std::vector<unsigned long> out;
    for (unsigned long n = 2; out.size() < count; ++n) {
        bool prime = true;
        for (unsigned long p : out) {
            if (p * p > n) break;
            if (n % p == 0) {
                prime = false;
                break;
            }
        }
        if (prime) out.push_back(n);
    }
    return out;
}

bool divides(unsigned long p, BigInt const& n) { return mpz_divisible_ui_p(n.get_mpz_t(), p) != 0; }

}  // namespace

std::string IrreducibilityEvidence::describe() const {
    if (witness_prime) return "certified: irreducible mod " + std::to_string(*witness_prime);
    return "assumed irreducible (no certificate among the first 200 primes)";
}

NumberFieldSpec::NumberFieldSpec(IntPoly poly, std::string label, bool assume_irreducible)
    : poly_(std::move(poly)), label_(std::move(label)) {
    if (poly_.degree() < 1) throw InputError("field '" + label_ + "': defining polynomial must have degree >= 1");
    if (!poly_.is_monic()) throw InputError("field '" + label_ + "': defining polynomial must be monic");
    disc_ = poly_.degree() >= 2 ? aeq::discriminant(poly_) : BigInt(1);
    if (disc_ == 0)
        throw ReducibleError("field '" + label_ + "': " + poly_.to_string() +
                             " has a repeated factor (zero discriminant)");

    for (unsigned long l : first_primes(kCertificatePrimes)) {
        if (divides(l, disc_)) continue;
        auto const type = splitting_type(poly_, PrimeModulus(l), l);
        if (type.g == 1 && type.pattern.front().multiplicity == 1) {
            evidence_.witness_prime = l;
            return;
        }
    }
    if (!assume_irreducible)
        throw ReducibleError("field '" + label_ + "': irreducibility of " + poly_.to_string() +
                             " not certified by any of the first 200 primes; pass the assume-irreducible override");
    evidence_.assumed = true;
}

std::vector<unsigned long> primes_up_to(unsigned long n) {
    std::vector<unsigned long> out;
    if (n < 2) return out;
    std::vector<bool> composite(n + 1, false);
    for (unsigned long i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (unsigned long j = i * i; j <= n; j += i) composite[j] = true;
    }
    return out;
}

std::vector<SplittingRecord> scan_field(NumberFieldSpec const& field, unsigned long max_prime, std::uint64_t seed,
                                        unsigned jobs) {
    if (max_prime < 2) throw InputError("scan_field: max_prime must be at least 2");
    auto const primes = primes_up_to(max_prime);
    std::vector<SplittingRecord> records(primes.size());

    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            unsigned long const l = primes[i];
            auto type = splitting_type(field.poly(), PrimeModulus(l), derive_seed(seed, l));
            records[i] = {l, std::move(type.pattern), type.g, divides(l, field.discriminant())};
        }
    };

    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(primes.size())));
    if (jobs == 1) {
        work(0, primes.size());
        return records;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(jobs);
    std::size_t const chunk = (primes.size() + jobs - 1) / jobs;
    for (unsigned j = 0; j < jobs; ++j) {
        std::size_t const begin = std::min(primes.size(), j * chunk);
        std::size_t const end = std::min(primes.size(), begin + chunk);
        pool.emplace_back([&, j, begin, end] {
            try {
                work(begin, end);
            } catch (...) {
                errors[j] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto const& e : errors)
        if (e) std::rethrow_exception(e);
    return records;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::EquivalentConsistent: return "equivalent-consistent";
        case Verdict::NotEquivalent: return "not-equivalent";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

Verdict parse_verdict(std::string const& text) {
    if (text == "equivalent-consistent") return Verdict::EquivalentConsistent;
    if (text == "not-equivalent") return Verdict::NotEquivalent;
    if (text == "inconclusive") return Verdict::Inconclusive;
    throw InputError("unknown verdict '" + text + "'");
}

double ComparatorReport::g_disagreement_density() const {
    if (scanned == 0) return 0.0;
    return static_cast<double>(g_disagreements.size()) / static_cast<double>(scanned);
}

ComparatorReport compare_fields(NumberFieldSpec const& a, NumberFieldSpec const& b, unsigned long max_prime,
                                std::uint64_t seed, CompareOptions const& options) {
    if (a.degree() < 1 || b.degree() < 1) throw InputError("compare_fields: degenerate degree-0 field");
    if (max_prime < 100) throw PreconditionError("compare_fields: max_prime must be at least 100");

    auto const ra = scan_field(a, max_prime, seed, options.jobs);
    auto const rb = scan_field(b, max_prime, seed, options.jobs);

    ComparatorReport report;
    report.field_a = a.label();
    report.field_b = b.label();
    report.max_prime = max_prime;
    report.seed = seed;
    report.min_prime_bound = options.min_prime_bound;
    report.irreducibility_a = a.irreducibility().describe();
    report.irreducibility_b = b.irreducibility().describe();

    unsigned long g_agree = 0;
    unsigned long required = 0;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        unsigned long const l = ra[i].prime;
        if (ra[i].ramified || rb[i].ramified) {
            std::string reason = ra[i].ramified && rb[i].ramified ? "divides disc(a) and disc(b)"
                                 : ra[i].ramified                 ? "divides disc(a)"
                                                                  : "divides disc(b)";
            report.excluded.push_back({l, std::move(reason)});
            continue;
        }
        ++report.scanned;
        if (l <= options.min_prime_bound) ++required;
        if (ra[i].g == rb[i].g)
            ++g_agree;
        else
            report.g_disagreements.push_back(l);
        if (ra[i].pattern != rb[i].pattern) report.pattern_disagreements.push_back(l);
        report.rows.push_back({l, ra[i].pattern, rb[i].pattern, ra[i].g, rb[i].g});
    }
    // Unramified primes between max_prime and the bound also count towards
    // the requirement; they are simply not scanned.
    if (options.min_prime_bound > max_prime) required = report.scanned + 1;

    mpq_class density(BigInt(g_agree), BigInt(std::max(1ul, report.scanned)));
    density.canonicalize();
    report.agreement_num = density.get_num();
    report.agreement_den = density.get_den();

    if (!report.g_disagreements.empty())
        report.verdict = Verdict::NotEquivalent;
    else if (report.pattern_disagreements.empty() && report.scanned >= required)
        report.verdict = Verdict::EquivalentConsistent;
    else
        report.verdict = Verdict::Inconclusive;
    return report;
}

std::string export_report(ComparatorReport const& r, ReportFormat format) {
    if (format == ReportFormat::Csv) {
        std::string out = "prime,pattern_a,pattern_b,g_a,g_b,agree\n";
        for (auto const& row : r.rows) {
            out += std::to_string(row.prime) + ',' + to_string(row.pattern_a) + ',' + to_string(row.pattern_b) + ',' +
                   std::to_string(row.g_a) + ',' + std::to_string(row.g_b) + ',' + (row.agree() ? "1" : "0") + '\n';
        }
        return out;
    }
    nlohmann::ordered_json j;
    j["field_a"] = r.field_a;
    j["field_b"] = r.field_b;
    j["max_prime"] = r.max_prime;
    j["excluded"] = nlohmann::ordered_json::array();
    for (auto const& e : r.excluded) j["excluded"].push_back({{"prime", e.prime}, {"reason", e.reason}});
    j["g_disagreements"] = r.g_disagreements;
    j["pattern_disagreements"] = r.pattern_disagreements;
    j["scanned"] = r.scanned;
    j["agreement_density"] = r.agreement_num.get_str() + "/" + r.agreement_den.get_str();
    j["verdict"] = to_string(r.verdict);
    j["seed"] = r.seed;
    j["min_prime_bound"] = r.min_prime_bound;
    j["irreducibility"] = {{"field_a", r.irreducibility_a}, {"field_b", r.irreducibility_b}};
    j["version"] = kVersion;
    return j.dump() + "\n";
}

ComparatorReport import_report(std::string const& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
        ComparatorReport r;
        r.field_a = j.at("field_a").get<std::string>();
        r.field_b = j.at("field_b").get<std::string>();
        r.max_prime = j.at("max_prime").get<unsigned long>();
        for (auto const& e : j.at("excluded"))
            r.excluded.push_back({e.at("prime").get<unsigned long>(), e.at("reason").get<std::string>()});
        r.g_disagreements = j.at("g_disagreements").get<std::vector<unsigned long>>();
        r.pattern_disagreements = j.at("pattern_disagreements").get<std::vector<unsigned long>>();
        r.scanned = j.at("scanned").get<unsigned long>();
        auto const density = j.at("agreement_density").get<std::string>();
        auto const slash = density.find('/');
        if (slash == std::string::npos) throw InputError("agreement_density must be 'num/den'");
        r.agreement_num = BigInt(density.substr(0, slash));
        r.agreement_den = BigInt(density.substr(slash + 1));
        r.verdict = parse_verdict(j.at("verdict").get<std::string>());
        r.seed = j.at("seed").get<std::uint64_t>();
        r.min_prime_bound = j.value("min_prime_bound", 0ul);
        if (j.contains("irreducibility")) {
            r.irreducibility_a = j["irreducibility"].value("field_a", "");
            r.irreducibility_b = j["irreducibility"].value("field_b", "");
        }
        return r;
    } catch (nlohmann::json::exception const& e) {
        throw InputError(std::string("malformed comparator report: ") + e.what());
    } catch (std::invalid_argument const&) {
        throw InputError("malformed comparator report: bad agreement_density");
    }
}

}  // namespace aeq
