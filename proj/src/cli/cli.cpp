#include "aeq/cli.hpp"

#include "aeq/gassmann.hpp"
#include "aeq/splitting.hpp"
#include "aeq/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

namespace aeq::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::size_t kMaxTransportRank = 4096;

struct Common {
    std::uint64_t seed = 0;
    std::vector<CLI::Option*> seed_options;
    unsigned jobs = 1;
    std::string format = "json";
    std::string output;
};

struct Options {
    Common common;
    std::string f1, f2, f;
    unsigned long max_prime = 10000;
    unsigned long min_prime_bound = 10000;
    bool assume_irreducible = false;
    std::string group;
    std::string h1, h2;
    std::string suite = "lemma1";
    long long trials = 100;
    std::uint64_t p = 5;
    unsigned precision = 3;
    std::size_t aux_order = 3;
    std::string cert_out;
    std::string verify;
};

class Progress {
public:
    explicit Progress(std::ostream& err) : err_(err) {
        char const* v = std::getenv("AEQ_VERBOSITY");
        enabled_ = !(v && std::string(v) == "0");
    }
    void note(std::string const& message) {
        if (enabled_) err_ << "aeq: " << message << "\n";
    }

private:
    std::ostream& err_;
    bool enabled_ = true;
};

void add_common(CLI::App* sub, Common& c) {
    c.seed_options.push_back(sub->add_option("--seed", c.seed, "Random seed (drawn from entropy when omitted)"));
    sub->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--format", c.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--output", c.output, "Write the report here instead of stdout");
}

void resolve_seed(Common& c) {
    if (std::none_of(c.seed_options.begin(), c.seed_options.end(), [](CLI::Option* opt) { return opt->count() > 0; })) {
        std::random_device rd;
        c.seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    }
}

void emit(Common const& c, std::string const& body, std::ostream& out) {
    if (c.output.empty()) {
        out << body;
        return;
    }
    std::ofstream file(c.output, std::ios::binary);
    if (!file) throw InputError("cannot write " + c.output);
    file << body;
}

std::string read_file(std::string const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

IntPoly parse_flag_poly(std::string const& flag, std::string const& text) {
    try {
        return parse_int_poly(text);
    } catch (ParseError const& e) {
        std::string const what = e.what();
        throw ParseError(flag + " \"" + text + "\": " + what.substr(0, what.rfind(" at column")), e.position());
    }
}

std::string csv_config(Json const& config) {
    std::string out;
    for (auto const& [key, value] : config.items())
        out += "# " + key + ": " + (value.is_string() ? value.get<std::string>() : value.dump()) + "\n";
    return out;
}

std::string text_config(Json const& config) {
    std::string out;
    for (auto const& [key, value] : config.items())
        out += key + ": " + (value.is_string() ? value.get<std::string>() : value.dump()) + "\n";
    return out;
}

Json base_config(std::string const& command, Common const& c) {
    return Json{{"command", command}, {"seed", c.seed}, {"format", c.format}, {"version", kVersion}};
}

std::string join(std::vector<unsigned long> const& xs, std::size_t limit) {
    std::string out;
    for (std::size_t i = 0; i < xs.size() && i < limit; ++i) out += (i ? ", " : "") + std::to_string(xs[i]);
    if (xs.size() > limit) out += ", ...";
    return out;
}

int split_compare(Options& o, std::ostream& out, Progress& progress) {
    IntPoly const pa = parse_flag_poly("--f1", o.f1), pb = parse_flag_poly("--f2", o.f2);
    NumberFieldSpec const a(pa, pa.to_string(), o.assume_irreducible);
    NumberFieldSpec const b(pb, pb.to_string(), o.assume_irreducible);
    progress.note("comparing splitting over primes <= " + std::to_string(o.max_prime) + " with " +
                  std::to_string(o.common.jobs) + " job(s)");
    auto const report =
        compare_fields(a, b, o.max_prime, o.common.seed, CompareOptions{o.min_prime_bound, o.common.jobs});
    progress.note("verdict " + to_string(report.verdict));

    Json config = base_config("split-compare", o.common);
    config["f1"] = o.f1;
    config["f2"] = o.f2;
    config["max_prime"] = o.max_prime;
    config["min_prime_bound"] = o.min_prime_bound;
    config["assume_irreducible"] = o.assume_irreducible;

    std::string body;
    if (o.common.format == "json") {
        Json j = Json::parse(export_report(report, ReportFormat::Json));
        j["config"] = config;
        body = j.dump() + "\n";
    } else if (o.common.format == "csv") {
        body = csv_config(config) + export_report(report, ReportFormat::Csv);
    } else {
        body += "field_a: " + report.field_a + "\nfield_b: " + report.field_b + "\n";
        body += "verdict: " + to_string(report.verdict) + "\n";
        body += "scanned: " + std::to_string(report.scanned) + "\n";
        body += "excluded: " + std::to_string(report.excluded.size()) + "\n";
        body += "g_disagreements: " + std::to_string(report.g_disagreements.size()) + "\n";
        if (!report.g_disagreements.empty())
            body += "first_g_disagreement: " + std::to_string(report.g_disagreements.front()) + "\n";
        body += "pattern_disagreements: " + std::to_string(report.pattern_disagreements.size()) + "\n";
        if (!report.pattern_disagreements.empty())
            body += "pattern_disagreement_primes: " + join(report.pattern_disagreements, 20) + "\n";
        body += "agreement_density: " + report.agreement_num.get_str() + "/" + report.agreement_den.get_str() + "\n";
        body += text_config(config);
    }
    emit(o.common, body, out);
    return report.verdict == Verdict::EquivalentConsistent ? kExitOk : kExitFailed;
}

int scan(Options& o, std::ostream& out, Progress& progress) {
    NumberFieldSpec const field(parse_flag_poly("--f", o.f), "", o.assume_irreducible);
    std::string const label = field.poly().to_string();
    progress.note("scanning primes <= " + std::to_string(o.max_prime));
    auto const records = scan_field(field, o.max_prime, o.common.seed, o.common.jobs);

    Json config = base_config("scan", o.common);
    config["f"] = o.f;
    config["max_prime"] = o.max_prime;
    config["assume_irreducible"] = o.assume_irreducible;

    std::string body;
    if (o.common.format == "json") {
        Json j;
        j["field"] = label;
        j["discriminant"] = field.discriminant().get_str();
        j["irreducibility"] = field.irreducibility().describe();
        j["records"] = Json::array();
        for (auto const& r : records)
            j["records"].push_back({{"prime", r.prime}, {"pattern", to_string(r.pattern)}, {"g", r.g}, {"ramified", r.ramified}});
        j["seed"] = o.common.seed;
        j["version"] = kVersion;
        j["config"] = config;
        body = j.dump() + "\n";
    } else if (o.common.format == "csv") {
        body = csv_config(config) + "prime,pattern,g,ramified\n";
        for (auto const& r : records)
            body += std::to_string(r.prime) + ",\"" + to_string(r.pattern) + "\"," + std::to_string(r.g) + "," +
                    (r.ramified ? "true" : "false") + "\n";
    } else {
        body = "field: " + label + "\ndiscriminant: " + field.discriminant().get_str() + "\n";
        for (auto const& r : records)
            body += std::to_string(r.prime) + ": " + to_string(r.pattern) + " g=" + std::to_string(r.g) +
                    (r.ramified ? " ramified" : "") + "\n";
        body += text_config(config);
    }
    emit(o.common, body, out);
    return kExitOk;
}

std::vector<std::string> split_on(std::string const& text, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : text) {
        if (ch == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    return parts;
}

std::uint32_t parse_point(std::string const& text) {
    try {
        std::size_t used = 0;
        unsigned long const v = std::stoul(text, &used);
        if (used != text.size()) throw InputError("bad point " + text);
        return static_cast<std::uint32_t>(v);
    } catch (std::logic_error const&) {
        throw InputError("bad point \"" + text + "\"");
    }
}

/* whole, trivial, stab:<i>, setstab:<i>,<j>,..., gens:<cycles>;<cycles>,
 * gl3f2-point-stabilizer, gl3f2-plane-stabilizer. */
Subgroup parse_subgroup(GroupPtr const& g, std::string const& spec) {
    if (spec == "whole") return Subgroup::whole(g);
    if (spec == "trivial") return Subgroup::trivial(g);
    if (spec == "gl3f2-point-stabilizer") return gl3f2_point_stabilizer(g);
    if (spec == "gl3f2-plane-stabilizer") return gl3f2_plane_stabilizer(g);
    auto const colon = spec.find(':');
    if (colon == std::string::npos) throw InputError("unknown subgroup \"" + spec + "\"");
    std::string const kind = spec.substr(0, colon), rest = spec.substr(colon + 1);
    if (kind == "stab") {
        std::uint32_t const pt = parse_point(rest);
        if (pt >= g->degree()) throw InputError("point " + rest + " out of range");
        return Subgroup::point_stabilizer(g, pt);
    }
    if (kind == "setstab") {
        std::vector<std::uint32_t> pts;
        for (auto const& s : split_on(rest, ',')) {
            pts.push_back(parse_point(s));
            if (pts.back() >= g->degree()) throw InputError("point " + s + " out of range");
        }
        return Subgroup::setwise_stabilizer(g, pts);
    }
    if (kind == "gens") {
        std::vector<ElemId> ids;
        for (auto const& s : split_on(rest, ';')) ids.push_back(g->index_of(Perm::from_cycles(g->degree(), s)));
        return Subgroup::generated_by(g, ids);
    }
    throw InputError("unknown subgroup kind \"" + kind + "\"");
}

struct GroupSetup {
    GroupPtr group;
    Subgroup h1;
    Subgroup h2;
};

GroupSetup setup_pair(Options const& o) {
    if (o.group.empty()) throw InputError("--group is required");
    auto const g = load_group(o.group);
    bool const gl3 = o.group == "gl3f2-points";
    if ((o.h1.empty() || o.h2.empty()) && !gl3) throw InputError("--h1 and --h2 are required for this group");
    return {g, o.h1.empty() ? gl3f2_point_stabilizer(g) : parse_subgroup(g, o.h1),
            o.h2.empty() ? gl3f2_plane_stabilizer(g) : parse_subgroup(g, o.h2)};
}

void pair_config(Json& config, Options const& o) {
    config["group"] = o.group;
    config["h1"] = o.h1.empty() ? "gl3f2-point-stabilizer" : o.h1;
    config["h2"] = o.h2.empty() ? "gl3f2-plane-stabilizer" : o.h2;
}

int gassmann(Options& o, std::ostream& out, Progress& progress) {
    auto const [g, h1, h2] = setup_pair(o);
    progress.note("group of order " + std::to_string(g->order()));
    auto const r = gassmann_report(h1, h2);
    auto const conj = find_conjugator(h1, h2);
    bool const consistent = r.equivalent == r.intersections_equal;

    Json config = base_config("gassmann", o.common);
    pair_config(config, o);

    auto const& classes = r.character_1.classes;
    std::string body;
    if (o.common.format == "json") {
        Json j;
        j["group"] = o.group;
        j["order"] = g->order();
        j["order_h1"] = h1.order();
        j["order_h2"] = h2.order();
        j["classes"] = Json::array();
        for (std::size_t i = 0; i < classes.size(); ++i)
            j["classes"].push_back({{"size", classes[i].size()},
                                    {"representative", g->element(classes[i].front()).to_cycle_string()},
                                    {"character_1", r.character_1.values[i]},
                                    {"character_2", r.character_2.values[i]},
                                    {"intersection_1", r.intersections_1[i]},
                                    {"intersection_2", r.intersections_2[i]}});
        j["gassmann_equivalent"] = r.equivalent;
        j["intersections_equal"] = r.intersections_equal;
        j["are_conjugate"] = conj.has_value();
        j["conjugator"] = conj ? Json(g->element(*conj).to_cycle_string()) : Json(nullptr);
        j["seed"] = o.common.seed;
        j["version"] = kVersion;
        j["config"] = config;
        body = j.dump(2) + "\n";
    } else if (o.common.format == "csv") {
        body = csv_config(config) + "class,size,representative,character_1,character_2,intersection_1,intersection_2\n";
        for (std::size_t i = 0; i < classes.size(); ++i)
            body += std::to_string(i) + "," + std::to_string(classes[i].size()) + ",\"" +
                    g->element(classes[i].front()).to_cycle_string() + "\"," + std::to_string(r.character_1.values[i]) +
                    "," + std::to_string(r.character_2.values[i]) + "," + std::to_string(r.intersections_1[i]) + "," +
                    std::to_string(r.intersections_2[i]) + "\n";
    } else {
        body = "order: " + std::to_string(g->order()) + "\n";
        body += "orders of H1, H2: " + std::to_string(h1.order()) + ", " + std::to_string(h2.order()) + "\n";
        for (std::size_t i = 0; i < classes.size(); ++i)
            body += "class " + std::to_string(i) + " (size " + std::to_string(classes[i].size()) + "): chi1 " +
                    std::to_string(r.character_1.values[i]) + ", chi2 " + std::to_string(r.character_2.values[i]) + "\n";
        body += std::string("gassmann_equivalent: ") + (r.equivalent ? "true" : "false") + "\n";
        body += std::string("are_conjugate: ") + (conj ? "true" : "false") + "\n";
        body += text_config(config);
    }
    emit(o.common, body, out);
    return r.equivalent && consistent ? kExitOk : kExitFailed;
}

int modlab_suite(Options& o, std::string const& suite, std::ostream& out, Progress& progress) {
    if (o.trials <= 0) throw InputError("--trials must be positive");
    if (suite != "lemma1" && suite != "prop4") throw InputError("unknown suite \"" + suite + "\"");
    RandomSuiteOptions opts;
    opts.trials = static_cast<std::size_t>(o.trials);
    opts.jobs = o.common.jobs;
    progress.note("running " + std::to_string(opts.trials) + " " + suite + " instances");
    auto const report = suite == "lemma1" ? run_lemma1_suite(o.common.seed, opts) : run_prop4_suite(o.common.seed, opts);
    std::size_t const failed = static_cast<std::size_t>(
        std::count_if(report.instances.begin(), report.instances.end(), [](InstanceReport const& i) { return !i.passed(); }));
    progress.note(std::to_string(failed) + " failing instance(s)");

    Json config = base_config(suite == "lemma1" ? "lemma-lab" : "prop4-lab", o.common);
    config["suite"] = suite;
    config["trials"] = o.trials;

    std::string body;
    if (o.common.format == "json") {
        Json j = Json::parse(to_json(report));
        j["config"] = config;
        body = j.dump(2) + "\n";
    } else if (o.common.format == "csv") {
        body = csv_config(config) + "instance,group,check,status,detail\n";
        for (std::size_t i = 0; i < report.instances.size(); ++i)
            for (auto const& c : report.instances[i].checks)
                body += std::to_string(i) + ",\"" + report.instances[i].group + "\"," + c.name + "," + to_string(c.status) +
                        ",\"" + c.detail + "\"\n";
    } else {
        for (std::size_t i = 0; i < report.instances.size(); ++i)
            body += "instance " + std::to_string(i) + " " + report.instances[i].group + ": " +
                    (report.instances[i].passed() ? "pass" : "FAIL") + "\n";
        body += "failed: " + std::to_string(failed) + " of " + std::to_string(report.instances.size()) + "\n";
        body += text_config(config);
    }
    emit(o.common, body, out);
    return report.passed() ? kExitOk : kExitFailed;
}

int transport(Options& o, std::ostream& out, Progress& progress) {
    if (!o.verify.empty()) {
        auto const cert = certificate_from_json(read_file(o.verify));
        auto const v = verify_certificate(cert);
        Json config = base_config("transport", o.common);
        config["verify"] = o.verify;
        Json j{{"verified", v.ok}, {"reasons", v.reasons}, {"group", cert.group_label}, {"p", cert.p},
               {"precision", cert.precision}, {"seed", o.common.seed}, {"version", kVersion}, {"config", config}};
        emit(o.common, j.dump(2) + "\n", out);
        return v.ok ? kExitOk : kExitFailed;
    }

    if (o.group.empty()) o.group = "gl3f2-points";
    auto const [g, h1, h2] = setup_pair(o);
    if (o.aux_order == 0) throw InputError("--aux-order must be positive");
    if (g->order() * o.aux_order > kMaxTransportRank)
        throw InputError("regular module of rank " + std::to_string(g->order() * o.aux_order) + " exceeds the limit " +
                         std::to_string(kMaxTransportRank));
    progress.note("constructing the permutation-module isomorphism over Z/" + std::to_string(o.p) + "^" +
                  std::to_string(o.precision));
    auto const cert = construct_iso(h1, h2, o.p, o.precision, o.common.seed, o.group);
    auto const v = verify_certificate(cert);
    if (!o.cert_out.empty()) {
        std::ofstream file(o.cert_out, std::ios::binary);
        if (!file) throw InputError("cannot write " + o.cert_out);
        file << certificate_to_json(cert);
    }
    progress.note("transporting coinvariants of the regular module of G x C" + std::to_string(o.aux_order));
    auto const prod = direct_product(g, cyclic_group(o.aux_order));
    auto const m = regular_module(prod.group, CoeffRing(o.p, o.precision));
    auto const t = transport_coinvariants(m, prod, cert);

    Json config = base_config("transport", o.common);
    pair_config(config, o);
    config["p"] = o.p;
    config["precision"] = o.precision;
    config["aux_order"] = o.aux_order;
    bool const ok = v.ok && t.is_iso && t.equivariant;

    std::string body;
    if (o.common.format == "json") {
        Json j;
        j["group"] = o.group;
        j["p"] = o.p;
        j["precision"] = o.precision;
        j["attempts"] = cert.attempts;
        j["hom_rank"] = cert.hom_rank;
        j["determinant_unit"] = cert.determinant_unit;
        j["certificate_verified"] = v.ok;
        j["coinvariant_exponents_1"] = t.exponents_1;
        j["coinvariant_exponents_2"] = t.exponents_2;
        j["is_iso"] = t.is_iso;
        j["equivariant"] = t.equivariant;
        j["seed"] = o.common.seed;
        j["version"] = kVersion;
        j["config"] = config;
        body = j.dump(2) + "\n";
    } else {
        std::string const sep = o.common.format == "csv" ? "," : ": ";
        body = o.common.format == "csv" ? csv_config(config) + "key,value\n" : "";
        auto line = [&](std::string const& k, std::string const& val) { body += k + sep + val + "\n"; };
        line("attempts", std::to_string(cert.attempts));
        line("hom_rank", std::to_string(cert.hom_rank));
        line("certificate_verified", v.ok ? "true" : "false");
        line("coinvariant_rank", std::to_string(t.exponents_1.size()));
        line("is_iso", t.is_iso ? "true" : "false");
        line("equivariant", t.equivariant ? "true" : "false");
        if (o.common.format == "text") body += text_config(config);
    }
    emit(o.common, body, out);
    return ok ? kExitOk : kExitFailed;
}

}  // namespace

int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Arithmetic equivalence and Gassmann transport laboratory", "aeq"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));
    Options o;

    auto* sc = app.add_subcommand("split-compare", "Compare prime splitting of two number fields");
    sc->add_option("--f1", o.f1, "First defining polynomial")->required();
    sc->add_option("--f2", o.f2, "Second defining polynomial")->required();
    sc->add_option("--max-prime", o.max_prime, "Largest prime scanned");
    sc->add_option("--min-prime-bound", o.min_prime_bound, "Primes that must be scanned for a consistency verdict");
    sc->add_flag("--assume-irreducible", o.assume_irreducible, "Skip the irreducibility certificate");
    add_common(sc, o.common);

    auto* sn = app.add_subcommand("scan", "Splitting types of one number field");
    sn->add_option("--f", o.f, "Defining polynomial")->required();
    sn->add_option("--max-prime", o.max_prime, "Largest prime scanned");
    sn->add_flag("--assume-irreducible", o.assume_irreducible, "Skip the irreducibility certificate");
    add_common(sn, o.common);

    auto* gs = app.add_subcommand("gassmann", "Gassmann equivalence and conjugacy of two subgroups");
    gs->add_option("--group", o.group, "Built-in group name or fixture path")->required();
    gs->add_option("--h1", o.h1, "First subgroup");
    gs->add_option("--h2", o.h2, "Second subgroup");
    add_common(gs, o.common);

    auto* ll = app.add_subcommand("lemma-lab", "Random instance suites over permutation modules");
    ll->add_option("--suite", o.suite, "lemma1 or prop4");
    ll->add_option("--trials", o.trials, "Number of instances");
    add_common(ll, o.common);

    auto* pl = app.add_subcommand("prop4-lab", "Random counting instances (same as lemma-lab --suite prop4)");
    pl->add_option("--trials", o.trials, "Number of instances");
    add_common(pl, o.common);

    auto* tr = app.add_subcommand("transport", "Build, verify and apply a permutation-module isomorphism");
    tr->add_option("--group", o.group, "Built-in group name or fixture path (default gl3f2-points)");
    tr->add_option("--h1", o.h1, "First subgroup");
    tr->add_option("--h2", o.h2, "Second subgroup");
    tr->add_option("--p", o.p, "Prime not dividing the group order");
    tr->add_option("--precision", o.precision, "Work over Z/p^precision");
    tr->add_option("--aux-order", o.aux_order, "Order of the auxiliary cyclic group");
    tr->add_option("--cert-out", o.cert_out, "Write the certificate JSON here");
    tr->add_option("--verify", o.verify, "Verify a certificate file instead of building one");
    add_common(tr, o.common);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (CLI::ParseError const& e) {
        int const code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    Progress progress(err);
    try {
        resolve_seed(o.common);
        progress.note("seed " + std::to_string(o.common.seed));
        if (sc->parsed()) return split_compare(o, out, progress);
        if (sn->parsed()) return scan(o, out, progress);
        if (gs->parsed()) return gassmann(o, out, progress);
        if (ll->parsed()) return modlab_suite(o, o.suite, out, progress);
        if (pl->parsed()) return modlab_suite(o, "prop4", out, progress);
        return transport(o, out, progress);
    } catch (InputError const& e) {
        err << "aeq: error: " << e.what() << "\n";
        return kExitUsage;
    } catch (PreconditionError const& e) {
        err << "aeq: precondition failed: " << e.what() << "\n";
        return kExitUsage;
    } catch (ClosureBoundExceeded const& e) {
        err << "aeq: error: " << e.what() << "\n";
        return kExitUsage;
    } catch (RetryExhausted const& e) {
        err << "aeq: " << e.what() << "\n";
        return kExitFailed;
    }
}

}  // namespace aeq::cli
