#include "aeq/gassmann.hpp"
#include "aeq/version.hpp"

#include <json.hpp>

#include <algorithm>

namespace aeq {

namespace {

void require_same_parent(Subgroup const& h1, Subgroup const& h2) {
    if (h1.parent() != h2.parent()) throw InputError("subgroups belong to different groups");
}

std::vector<std::pair<ElemId, std::uint64_t>> alpha_from_first_column(Matrix const& phi, CosetSpace const& target) {
    std::vector<std::pair<ElemId, std::uint64_t>> alpha;
    for (std::size_t i = 0; i < phi.rows(); ++i)
        if (phi(i, 0) != 0) alpha.emplace_back(target.representative(i), phi(i, 0));
    std::sort(alpha.begin(), alpha.end());
    return alpha;
}

bool commutes_on_generators(Matrix const& phi, CosetSpace const& cs1, CosetSpace const& cs2) {
    auto const& g = *cs1.parent();
    for (ElemId gen : g.generator_ids()) {
        ElemId const inv = g.inverse(gen);
        for (std::size_t i = 0; i < phi.rows(); ++i)
            for (std::size_t j = 0; j < phi.cols(); ++j)
                if (phi(i, cs1.act(gen, j)) != phi(cs2.act(inv, i), j)) return false;
    }
    return true;
}

}  // namespace

PermCharacter perm_character(CosetSpace const& cs) {
    PermCharacter chi{cs.parent(), cs.parent()->conjugacy_classes(), {}};
    for (auto const& cls : chi.classes) {
        std::uint64_t fixed = 0;
        for (std::size_t c = 0; c < cs.index(); ++c)
            if (cs.act(cls.front(), c) == c) ++fixed;
        chi.values.push_back(fixed);
    }
    return chi;
}

GassmannReport gassmann_report(Subgroup const& h1, Subgroup const& h2) {
    require_same_parent(h1, h2);
    GassmannReport r{false, false, {}, {}, perm_character(CosetSpace(h1)), perm_character(CosetSpace(h2))};
    for (auto const& cls : r.character_1.classes) {
        r.intersections_1.push_back(static_cast<std::uint64_t>(
            std::count_if(cls.begin(), cls.end(), [&](ElemId e) { return h1.contains(e); })));
        r.intersections_2.push_back(static_cast<std::uint64_t>(
            std::count_if(cls.begin(), cls.end(), [&](ElemId e) { return h2.contains(e); })));
    }
    r.equivalent = r.character_1.values == r.character_2.values;
    r.intersections_equal = r.intersections_1 == r.intersections_2;
    return r;
}

bool gassmann_equivalent(Subgroup const& h1, Subgroup const& h2) { return gassmann_report(h1, h2).equivalent; }

std::optional<ElemId> find_conjugator(Subgroup const& h1, Subgroup const& h2) {
    require_same_parent(h1, h2);
    if (h1.order() != h2.order()) return std::nullopt;
    auto const& g = *h1.parent();
    for (ElemId x = 0; x < g.order(); ++x) {
        bool const ok = std::all_of(h1.generators().begin(), h1.generators().end(),
                                    [&](ElemId h) { return h2.contains(g.conjugate(x, h)); });
        if (ok) return x;
    }
    return std::nullopt;
}

bool are_conjugate(Subgroup const& h1, Subgroup const& h2) { return find_conjugator(h1, h2).has_value(); }

SubquotientBasis commuting_space(CosetSpace const& cs1, CosetSpace const& cs2, CoeffRing const& ring) {
    auto const& g = *cs1.parent();
    std::size_t const n1 = cs1.index(), n2 = cs2.index();
    std::size_t const unknowns = n1 * n2;
    std::vector<std::vector<std::int64_t>> rows;
    for (ElemId gen : g.generator_ids()) {
        ElemId const inv = g.inverse(gen);
        for (std::size_t i = 0; i < n2; ++i) {
            for (std::size_t j = 0; j < n1; ++j) {
                std::size_t const lhs = i * n1 + cs1.act(gen, j);
                std::size_t const rhs = cs2.act(inv, i) * n1 + j;
                if (lhs == rhs) continue;
                std::vector<std::int64_t> row(unknowns, 0);
                row[lhs] = 1;
                row[rhs] = -1;
                rows.push_back(std::move(row));
            }
        }
    }
    if (rows.empty()) return kernel(Matrix(ring, 0, unknowns));
    return kernel(Matrix::from_rows(ring, rows));
}

TransportCertificate construct_iso(Subgroup const& h1, Subgroup const& h2, std::uint64_t p, unsigned precision,
                                   std::uint64_t seed, std::string const& group_label) {
    require_same_parent(h1, h2);
    auto const& group = h1.parent();
    CoeffRing const ring(p, precision);
    if (group->order() % p == 0)
        throw PreconditionError("p = " + std::to_string(p) + " divides the group order " +
                                std::to_string(group->order()));
    if (!gassmann_equivalent(h1, h2)) throw PreconditionError("permutation characters of H1 and H2 differ");

    CosetSpace const cs1(h1), cs2(h2);
    std::size_t const n = cs1.index();
    auto const space = commuting_space(cs1, cs2, ring);

    TransportCertificate cert{group_label, group, h1.generators(), h2.generators(), p, precision,
                              Matrix(ring, n, n), {}, seed, false, false, space.rank(), 0};
    if (auto const g = find_conjugator(h1, h2)) {
        ElemId const ginv = group->inverse(*g);
        for (std::size_t c = 0; c < n; ++c) cert.phi.at(cs2.coset_of(group->mul(cs1.representative(c), ginv)), c) = 1;
    } else {
        Rng rng(seed);
        bool found = false;
        while (!found && cert.attempts < kIsoRetryBound) {
            ++cert.attempts;
            Vec coeffs(space.rank());
            for (auto& c : coeffs) c = rng.below(ring.modulus());
            Vec const flat = space.basis.apply(coeffs);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) cert.phi.at(i, j) = flat[i * n + j];
            found = rank_mod_p(cert.phi) == n;
        }
        if (!found)
            throw RetryExhausted("no invertible commuting matrix in " + std::to_string(kIsoRetryBound) +
                                 " draws; commuting space has rank " + std::to_string(space.rank()));
    }
    cert.determinant_unit = rank_mod_p(cert.phi) == n;
    cert.equivariance_checked = commutes_on_generators(cert.phi, cs1, cs2);
    cert.alpha = alpha_from_first_column(cert.phi, cs2);
    return cert;
}

VerificationResult verify_certificate(TransportCertificate const& cert) {
    VerificationResult r{true, {}};
    auto fail = [&](std::string reason) {
        r.ok = false;
        r.reasons.push_back(std::move(reason));
    };
    if (!cert.group) {
        fail("certificate has no group");
        return r;
    }
    auto const& g = *cert.group;
    CosetSpace const cs1(cert.h1()), cs2(cert.h2());
    std::size_t const n1 = cs1.index(), n2 = cs2.index();
    if (cert.phi.rows() != n2 || cert.phi.cols() != n1) {
        fail("phi has shape " + std::to_string(cert.phi.rows()) + "x" + std::to_string(cert.phi.cols()) +
             ", expected " + std::to_string(n2) + "x" + std::to_string(n1));
        return r;
    }
    if (cert.phi.ring().p() != cert.p || cert.phi.ring().k() != cert.precision) fail("phi is over the wrong ring");
    std::uint64_t const q = cert.phi.ring().modulus();

    for (ElemId e = 0; e < g.order() && r.ok; ++e) {
        ElemId const inv = g.inverse(e);
        for (std::size_t i = 0; i < n2 && r.ok; ++i)
            for (std::size_t j = 0; j < n1 && r.ok; ++j)
                if (cert.phi(i, cs1.act(e, j)) != cert.phi(cs2.act(inv, i), j))
                    fail("phi does not commute with element " + g.element(e).to_cycle_string());
    }
    if (n1 != n2 || rank_mod_p(cert.phi) != n1) fail("phi is not invertible mod p");

    for (std::size_t i = 0; i < cert.alpha.size(); ++i) {
        auto const [e, c] = cert.alpha[i];
        if (e >= g.order() || c == 0 || c >= q || (i > 0 && cert.alpha[i - 1].first >= e)) {
            fail("alpha has a malformed entry");
            return r;
        }
        if (cs2.representative(cs2.coset_of(e)) != e) fail("alpha is not supported on coset representatives");
    }
    for (std::size_t col = 0; col < n1; ++col) {
        Vec expected(n2, 0);
        for (auto const& [e, c] : cert.alpha) {
            std::size_t const target = cs2.coset_of(g.mul(cs1.representative(col), e));
            expected[target] = (expected[target] + c) % q;
        }
        if (expected != cert.phi.column(col)) {
            fail("column " + std::to_string(col) + " of phi differs from x alpha");
            break;
        }
    }
    return r;
}

TransportCertificate reduce_precision(TransportCertificate const& cert, unsigned precision) {
    if (precision == 0 || precision > cert.precision) throw InputError("can only reduce to a lower precision");
    TransportCertificate out = cert;
    CoeffRing const ring(cert.p, precision);
    out.precision = precision;
    out.phi = cert.phi.reduced(ring);
    out.alpha.clear();
    for (auto const& [e, c] : cert.alpha)
        if (c % ring.modulus() != 0) out.alpha.emplace_back(e, c % ring.modulus());
    return out;
}

TransportCertificate invert_certificate(TransportCertificate const& cert) {
    auto const s = smith_form(cert.phi);
    if (cert.phi.rows() != cert.phi.cols() ||
        !std::all_of(s.exponents.begin(), s.exponents.end(), [](unsigned e) { return e == 0; }))
        throw PreconditionError("phi is not invertible");
    TransportCertificate out = cert;
    std::swap(out.h1_generators, out.h2_generators);
    out.phi = s.v * s.u;
    out.alpha = alpha_from_first_column(out.phi, CosetSpace(out.h2()));
    out.attempts = 0;
    return out;
}

std::string certificate_to_json(TransportCertificate const& cert) {
    auto const& g = *cert.group;
    auto cycles = [&](std::vector<ElemId> const& ids) {
        std::vector<std::string> out;
        for (ElemId e : ids) out.push_back(g.element(e).to_cycle_string());
        return out;
    };
    nlohmann::ordered_json j;
    j["group"] = cert.group_label;
    j["degree"] = g.degree();
    std::vector<std::string> gens;
    for (auto const& p : g.generators()) gens.push_back(p.to_cycle_string());
    j["group_generators"] = gens;
    j["H1"] = cycles(cert.h1_generators);
    j["H2"] = cycles(cert.h2_generators);
    j["p"] = cert.p;
    j["precision"] = cert.precision;
    j["phi"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < cert.phi.rows(); ++i) j["phi"].push_back(cert.phi.row(i));
    j["alpha"] = nlohmann::ordered_json::object();
    for (auto const& [e, c] : cert.alpha) j["alpha"][std::to_string(e)] = c;
    j["seed"] = cert.seed;
    j["determinant_unit"] = cert.determinant_unit;
    j["equivariance_checked"] = cert.equivariance_checked;
    j["hom_rank"] = cert.hom_rank;
    j["attempts"] = cert.attempts;
    j["version"] = kVersion;
    return j.dump(2) + "\n";
}

TransportCertificate certificate_from_json(std::string const& text) {
    try {
        auto const j = nlohmann::json::parse(text);
        std::size_t const degree = j.at("degree").get<std::size_t>();
        std::vector<Perm> gens;
        for (auto const& s : j.at("group_generators")) gens.push_back(Perm::from_cycles(degree, s.get<std::string>()));
        auto const group = generate_group(degree, gens);
        auto ids = [&](nlohmann::json const& arr) {
            std::vector<ElemId> out;
            for (auto const& s : arr) out.push_back(group->index_of(Perm::from_cycles(degree, s.get<std::string>())));
            return out;
        };
        std::uint64_t const p = j.at("p").get<std::uint64_t>();
        unsigned const precision = j.at("precision").get<unsigned>();
        CoeffRing const ring(p, precision);
        auto const rows = j.at("phi").get<std::vector<std::vector<std::int64_t>>>();
        for (auto const& r : rows)
            for (auto v : r)
                if (v < 0 || static_cast<std::uint64_t>(v) >= ring.modulus()) throw InputError("phi entry out of range");
        std::size_t const cols = rows.empty() ? 0 : rows.front().size();
        for (auto const& r : rows)
            if (r.size() != cols) throw InputError("phi rows have different lengths");
        TransportCertificate cert{j.at("group").get<std::string>(),
                                  group,
                                  ids(j.at("H1")),
                                  ids(j.at("H2")),
                                  p,
                                  precision,
                                  rows.empty() ? Matrix(ring, 0, 0) : Matrix::from_rows(ring, rows),
                                  {},
                                  j.at("seed").get<std::uint64_t>(),
                                  j.at("determinant_unit").get<bool>(),
                                  j.at("equivariance_checked").get<bool>(),
                                  j.at("hom_rank").get<std::size_t>(),
                                  j.at("attempts").get<unsigned>()};
        for (auto const& [key, value] : j.at("alpha").items())
            cert.alpha.emplace_back(static_cast<ElemId>(std::stoul(key)), value.get<std::uint64_t>());
        std::sort(cert.alpha.begin(), cert.alpha.end());
        return cert;
    } catch (nlohmann::json::exception const& e) {
        throw InputError(std::string("malformed certificate: ") + e.what());
    } catch (std::logic_error const& e) {
        throw InputError(std::string("malformed certificate: ") + e.what());
    }
}

TransportResult transport_coinvariants(GModule const& m, DirectProduct const& product, TransportCertificate const& cert) {
    if (m.group() != product.group) throw InputError("module is not over the given product group");
    if (!cert.group || product.left->elements() != cert.group->elements())
        throw InputError("left factor of the product is not the certificate's group");
    auto const& ring = m.ring();
    if (ring.p() != cert.p || ring.k() > cert.precision)
        throw InputError("module ring " + ring.to_string() + " is incompatible with the certificate");
    if (auto const v = verify_certificate(cert); !v.ok)
        throw PreconditionError("certificate does not verify: " + v.reasons.front());

    std::vector<ElemId> a_gens;
    for (ElemId a : product.right->generator_ids()) a_gens.push_back(product.embed_right(a));
    Rng rng(cert.seed);
    for (ElemId g : product.left->generator_ids()) {
        ElemId const ge = product.embed_left(g);
        for (ElemId a : a_gens) {
            for (int t = 0; t < 3; ++t) {
                Vec v(m.rank());
                for (auto& x : v) x = rng.below(ring.modulus());
                if (m.apply(ge, m.apply(a, v)) != m.apply(a, m.apply(ge, v)))
                    throw PreconditionError("G- and A-actions on the module do not commute");
            }
        }
    }

    auto embed = [&](std::vector<ElemId> const& gens) {
        std::vector<ElemId> out;
        for (ElemId h : gens) out.push_back(product.embed_left(h));
        return Subgroup::generated_by(product.group, out);
    };
    Subgroup const h1 = embed(cert.h1_generators);
    Subgroup const h2 = embed(cert.h2_generators);
    auto const q1 = coinvariants(m, h1, a_gens);
    auto const q2 = coinvariants(m, h2, a_gens);

    Matrix alpha_star(ring, m.rank(), m.rank());
    for (auto const& [e, c] : cert.alpha) {
        Matrix const act = m.action(product.embed_left(cert.group->inverse(e)));
        std::uint64_t const coeff = c % ring.modulus();
        for (std::size_t i = 0; i < m.rank(); ++i)
            for (std::size_t j = 0; j < m.rank(); ++j)
                if (act(i, j)) alpha_star.at(i, j) = ring.add(alpha_star(i, j), ring.mul(coeff, act(i, j)));
    }

    Matrix const p2_alpha = q2.projection * alpha_star;
    Matrix const id = Matrix::identity(ring, m.rank());
    for (ElemId h : h1.generators())
        if (!q2.normalize_rows(p2_alpha * (m.action(h) - id)).is_zero())
            throw PreconditionError("alpha* does not descend to the coinvariants");

    TransportResult result{q2.normalize_rows(p2_alpha * q1.lift), q1.exponents, q2.exponents, false, true};
    result.is_iso = q1.exponents == q2.exponents && result.map.rows() == result.map.cols() &&
                    rank_mod_p(result.map) == result.map.rows();
    for (std::size_t j = 0; j < a_gens.size(); ++j) {
        if (!(q2.normalize_rows(result.map * q1.actions[j]) == q2.normalize_rows(q2.actions[j] * result.map)))
            result.equivariant = false;
    }
    return result;
}

}  // namespace aeq
