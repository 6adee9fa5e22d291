#include "aeq/modlab.hpp"
#include "aeq/version.hpp"

#include <json.hpp>

#include <algorithm>
#include <exception>
#include <thread>

namespace aeq {

namespace {

constexpr int kInstanceAttempts = 1000;

std::vector<std::string> describe(Subgroup const& d) {
    std::vector<std::string> out;
    for (ElemId g : d.generators()) out.push_back(d.parent()->element(g).to_cycle_string());
    if (out.empty()) out.push_back("()");
    return out;
}

CheckResult mutual_containment(std::string name, SubquotientBasis const& a, SubquotientBasis const& b) {
    if (auto w = containment_witness(a, b)) return {std::move(name), CheckStatus::Fail, *w, "vector outside the first span"};
    if (auto w = containment_witness(b, a)) return {std::move(name), CheckStatus::Fail, *w, "vector outside the second span"};
    return {std::move(name), CheckStatus::Pass, {}, "rank " + std::to_string(a.rank())};
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        out.push_back(d);
        while (n % d == 0) n /= d;
    }
    if (n > 1) out.push_back(n);
    return out;
}

struct RandomAbelian {
    GroupPtr group;
    std::string label;
};

RandomAbelian random_abelian(Rng& rng, std::size_t max_order) {
    std::vector<std::size_t> invariants;
    std::size_t order = 1;
    std::size_t const factors = 1 + rng.below(3);
    for (std::size_t i = 0; i < factors; ++i) {
        std::size_t const cap = std::min<std::size_t>(12, max_order / order);
        if (cap < 2) break;
        std::size_t const n = 2 + rng.below(cap - 1);
        invariants.push_back(n);
        order *= n;
    }
    if (invariants.empty()) invariants.push_back(2);
    std::string label = "abelian:";
    for (std::size_t i = 0; i < invariants.size(); ++i) label += (i ? "x" : "") + std::to_string(invariants[i]);
    return {abelian_group(invariants), label};
}

Subgroup random_subgroup(GroupPtr const& g, Rng& rng) {
    std::size_t const gens = rng.below(3);
    std::vector<ElemId> picks;
    for (std::size_t i = 0; i < gens; ++i) picks.push_back(g->random_element(rng));
    return Subgroup::generated_by(g, picks);
}

InstanceReport lemma1_random_instance(std::uint64_t seed, RandomSuiteOptions const& options) {
    Rng rng(seed);
    for (int attempt = 0; attempt < kInstanceAttempts; ++attempt) {
        auto const [g, label] = random_abelian(rng, options.max_group_order);
        auto const d = random_subgroup(g, rng);
        ElemId const sigma = g->random_element(rng);
        std::uint64_t const f = coset_order(d, sigma);
        if (f == 1) continue;
        auto const primes = prime_factors(f);
        std::uint64_t const p = primes[rng.below(primes.size())];
        auto report = lemma1_suite(d, sigma, p, label);
        report.params.emplace_back("seed", static_cast<std::int64_t>(seed));
        return report;
    }
    throw RetryExhausted("no lemma1 instance found");
}

InstanceReport prop4_random_instance(std::uint64_t seed, RandomSuiteOptions const& options) {
    Rng rng(seed);
    for (int attempt = 0; attempt < kInstanceAttempts; ++attempt) {
        auto const [g, label] = random_abelian(rng, options.max_group_order);
        auto const primes = prime_factors(g->order());
        std::uint64_t const p = primes[rng.below(primes.size())];
        std::size_t const count = 1 + rng.below(options.max_summands);
        std::vector<Subgroup> ds;
        std::size_t index_sum = 0;
        for (std::size_t i = 0; i < count; ++i) {
            ds.push_back(random_subgroup(g, rng));
            index_sum += g->order() / ds.back().order();
        }
        if (index_sum > options.max_index_sum) continue;
        std::vector<ElemId> candidates;
        for (ElemId e = 0; e < g->order(); ++e) {
            bool const ok = std::all_of(ds.begin(), ds.end(), [&](Subgroup const& d) { return coset_order(d, e) % p == 0; });
            if (ok) candidates.push_back(e);
        }
        if (candidates.empty()) continue;
        ElemId const sigma = candidates[rng.below(candidates.size())];
        auto const result = prop4_counting_check(ds, sigma, p);

        InstanceReport report;
        report.group = label;
        report.params.emplace_back("p", static_cast<std::int64_t>(p));
        report.params.emplace_back("sigma", g->element(sigma).to_cycle_string());
        for (std::size_t i = 0; i < ds.size(); ++i) report.params.emplace_back("D" + std::to_string(i), describe(ds[i]));
        report.params.emplace_back("index_sum", static_cast<std::int64_t>(result.index_sum));
        report.params.emplace_back("seed", static_cast<std::int64_t>(seed));
        bool const count_ok = result.g_computed == result.expected;
        report.checks.push_back({"coinvariant_rank_equals_summands", count_ok ? CheckStatus::Pass : CheckStatus::Fail, {},
                                 "rank " + std::to_string(result.g_computed) + ", summands " +
                                     std::to_string(result.expected)});
        bool const exact = result.rank_j + 1 == result.index_sum;
        report.checks.push_back({"augmentation_kernel_rank", exact ? CheckStatus::Pass : CheckStatus::Fail, {},
                                 "rank J " + std::to_string(result.rank_j) + ", index sum " +
                                     std::to_string(result.index_sum)});
        return report;
    }
    throw RetryExhausted("no prop4 instance satisfying the divisibility condition found");
}

template <typename Make>
SuiteReport run_suite(std::string name, std::uint64_t seed, RandomSuiteOptions const& options, Make make) {
    if (options.trials == 0) throw InputError("trials must be positive");
    SuiteReport report{std::move(name), seed, std::vector<InstanceReport>(options.trials)};
    unsigned const jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(options.trials)));
    std::vector<std::exception_ptr> errors(jobs);
    auto work = [&](unsigned j) {
        try {
            for (std::size_t i = j; i < options.trials; i += jobs) report.instances[i] = make(derive_seed(seed, i), options);
        } catch (...) {
            errors[j] = std::current_exception();
        }
    };
    if (jobs == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(work, j);
        for (auto& t : pool) t.join();
    }
    for (auto const& e : errors)
        if (e) std::rethrow_exception(e);
    return report;
}

}  // namespace

std::string to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::NotApplicable: return "not applicable";
    }
    return "fail";
}

bool InstanceReport::passed() const {
    return std::none_of(checks.begin(), checks.end(), [](CheckResult const& c) { return c.status == CheckStatus::Fail; });
}

bool SuiteReport::passed() const {
    return std::all_of(instances.begin(), instances.end(), [](InstanceReport const& i) { return i.passed(); });
}

std::string to_json(SuiteReport const& report) {
    nlohmann::ordered_json j;
    j["suite"] = report.suite;
    j["seed"] = report.seed;
    j["version"] = kVersion;
    j["instances"] = nlohmann::ordered_json::array();
    for (auto const& inst : report.instances) {
        nlohmann::ordered_json ij;
        ij["group"] = inst.group;
        ij["params"] = nlohmann::ordered_json::object();
        for (auto const& [key, value] : inst.params)
            std::visit([&](auto const& v) { ij["params"][key] = v; }, value);
        ij["checks"] = nlohmann::ordered_json::array();
        for (auto const& c : inst.checks) {
            ij["checks"].push_back({{"name", c.name},
                                    {"pass", c.status != CheckStatus::Fail},
                                    {"status", to_string(c.status)},
                                    {"witness", c.witness},
                                    {"detail", c.detail}});
        }
        j["instances"].push_back(std::move(ij));
    }
    j["passed"] = report.passed();
    return j.dump(2) + "\n";
}

InstanceReport lemma1_suite(Subgroup const& d, ElemId sigma, std::uint64_t p, std::string const& group_label) {
    auto const& g = d.parent();
    if (!d.is_normal()) throw PreconditionError("lemma1 checks need a normal subgroup");
    CoeffRing const field(p, 1);
    CosetSpace const cs(d);
    GModule const m = perm_module(cs, field);
    std::uint64_t const f = coset_order(d, sigma);

    InstanceReport report;
    report.group = group_label.empty() ? "order " + std::to_string(g->order()) : group_label;
    report.params.emplace_back("p", static_cast<std::int64_t>(p));
    report.params.emplace_back("sigma", g->element(sigma).to_cycle_string());
    report.params.emplace_back("D", describe(d));
    report.params.emplace_back("index", static_cast<std::int64_t>(cs.index()));
    report.params.emplace_back("coset_order", static_cast<std::int64_t>(f));

    auto const fixed = fixed_points(m, sigma);
    Matrix const norm = norm_operator(m, sigma, d);
    report.checks.push_back(mutual_containment("fixed_equals_norm_image", fixed, column_span(norm)));

    Matrix const sigma_minus_one = m.action(sigma) - Matrix::identity(field, m.rank());
    report.checks.push_back(mutual_containment("norm_kernel_equals_sigma_minus_one_image", kernel(norm),
                                               column_span(sigma_minus_one)));

    if (f % p != 0) {
        report.checks.push_back({"fixed_in_augmentation_image", CheckStatus::NotApplicable, {},
                                 "p does not divide the coset order " + std::to_string(f)});
    } else if (auto w = containment_witness(augmentation_image(m), fixed)) {
        report.checks.push_back({"fixed_in_augmentation_image", CheckStatus::Fail, *w, "fixed vector outside I_G M"});
    } else {
        report.checks.push_back({"fixed_in_augmentation_image", CheckStatus::Pass, {}, ""});
    }

    std::size_t const rank = coinvariants_by_group(restrict(m, fixed)).rank();
    report.checks.push_back({"fixed_coinvariant_rank_one", rank == 1 ? CheckStatus::Pass : CheckStatus::Fail, {},
                             "rank " + std::to_string(rank)});
    return report;
}

Prop4Result prop4_counting_check(std::vector<Subgroup> const& ds, ElemId sigma, std::uint64_t p) {
    if (ds.empty()) throw InputError("need at least one subgroup");
    auto const& g = ds.front().parent();
    CoeffRing const field(p, 1);
    std::vector<GModule> parts;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        if (ds[i].parent() != g) throw InputError("subgroups of different groups");
        std::uint64_t const f = coset_order(ds[i], sigma);
        if (f % p != 0)
            throw PreconditionError("p = " + std::to_string(p) + " does not divide the order " + std::to_string(f) +
                                    " of sigma modulo subgroup " + std::to_string(i));
        parts.push_back(perm_module(CosetSpace(ds[i]), field));
    }
    GModule const s = direct_sum(parts);
    std::size_t const n = s.rank();

    Matrix augmentation(field, 1, n);
    for (std::size_t j = 0; j < n; ++j) augmentation.at(0, j) = 1;
    auto const j_basis = kernel(augmentation);
    auto const j_sigma = kernel(augmentation.vcat(s.action(sigma) - Matrix::identity(field, n)));
    std::size_t const g_computed = coinvariants_by_group(restrict(s, j_sigma)).rank();
    return {g_computed, ds.size(), j_basis.rank(), n};
}

SuiteReport run_lemma1_suite(std::uint64_t seed, RandomSuiteOptions const& options) {
    return run_suite("lemma1", seed, options, lemma1_random_instance);
}

SuiteReport run_prop4_suite(std::uint64_t seed, RandomSuiteOptions const& options) {
    return run_suite("prop4", seed, options, prop4_random_instance);
}

}  // namespace aeq
