#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aeq/modlab.hpp"
#include "oracles/berlekamp_pattern.hpp"
#include "oracles/brute_module.hpp"

#include <cmath>

using namespace aeq;

namespace {

Matrix random_matrix(CoeffRing const& ring, std::size_t r, std::size_t c, Rng& rng, bool sparse_valuations) {
    Matrix m(ring, r, c);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < c; ++j) {
            std::uint64_t v = rng.below(ring.modulus());
            if (sparse_valuations) v = ring.mul(v, ring.p_power(static_cast<unsigned>(rng.below(ring.k() + 1))));
            m.at(i, j) = v;
        }
    }
    return m;
}

oracle::DenseMatrix dense(Matrix const& m) {
    oracle::DenseMatrix out(m.rows(), std::vector<std::uint64_t>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
    return out;
}

// |submodule| from generator divisibilities.
std::size_t span_size(SubquotientBasis const& s, CoeffRing const& ring) {
    std::size_t size = 1;
    for (unsigned d : s.divisibility)
        for (unsigned i = d; i < ring.k(); ++i) size *= ring.p();
    return size;
}

Vec ones(std::size_t n) { return Vec(n, 1); }

}  // namespace

TEST_CASE("CoeffRing") {
    CoeffRing const r(5, 3);
    CHECK(r.modulus() == 125);
    CHECK(r.valuation(0) == 3);
    CHECK(r.valuation(50) == 2);
    CHECK(r.valuation(7) == 0);
    CHECK(r.mul(r.inverse(7), 7) == 1);
    CHECK(r.reduce(-1) == 124);
    CHECK(r.p_power(2) == 25);
    CHECK(r.p_power(3) == 0);
    CHECK_THROWS_AS(r.inverse(10), PreconditionError);
    CHECK_THROWS_AS(CoeffRing(4, 1), InputError);
    CHECK_THROWS_AS(CoeffRing(3, 0), InputError);
    CHECK_THROWS_AS(CoeffRing(65537, 2), InputError);
    CHECK(r.to_string() == "Z/5^3");
    CHECK(CoeffRing(7, 1).to_string() == "F_7");
}

TEST_CASE("Smith form identities on random matrices") {
    Rng rng(11);
    for (auto const& ring : {CoeffRing(2, 1), CoeffRing(3, 1), CoeffRing(2, 3), CoeffRing(3, 2), CoeffRing(5, 3)}) {
        for (int trial = 0; trial < 30; ++trial) {
            std::size_t const r = 1 + rng.below(6), c = 1 + rng.below(6);
            Matrix const a = random_matrix(ring, r, c, rng, trial % 2 == 1);
            auto const s = smith_form(a);
            CHECK(s.u * s.u_inv == Matrix::identity(ring, r));
            Matrix const d = s.u * a * s.v;
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < c; ++j)
                    CHECK(d(i, j) == (i == j && i < s.exponents.size() ? ring.p_power(s.exponents[i]) : 0));
            CHECK(std::is_sorted(s.exponents.begin(), s.exponents.end()));
            CHECK(rank_mod_p(s.v) == c);

            auto const ker = kernel(a);
            CHECK((a * ker.basis).is_zero());
            auto const img = column_span(a);
            // |ker| * |im| = |domain|.
            double const lhs = std::log(static_cast<double>(span_size(ker, ring))) +
                               std::log(static_cast<double>(span_size(img, ring)));
            CHECK(lhs == doctest::Approx(static_cast<double>(c) * std::log(static_cast<double>(ring.modulus()))));

            Vec x(c);
            for (auto& v : x) v = rng.below(ring.modulus());
            Vec const b = a.apply(x);
            auto const sol = solve(a, b);
            REQUIRE(sol.has_value());
            CHECK(a.apply(*sol) == b);
            CHECK(contains(img, b));
            for (std::size_t j = 0; j < a.cols(); ++j) CHECK(contains(img, a.column(j)));
        }
    }
}

TEST_CASE("kernel and image sizes match exhaustive enumeration") {
    Rng rng(5);
    for (auto const& ring : {CoeffRing(2, 2), CoeffRing(3, 1), CoeffRing(2, 3), CoeffRing(3, 2)}) {
        for (int trial = 0; trial < 25; ++trial) {
            std::size_t const r = 1 + rng.below(3), c = 1 + rng.below(3);
            Matrix const a = random_matrix(ring, r, c, rng, true);
            CHECK(span_size(kernel(a), ring) == oracle::kernel_size(dense(a), c, ring.modulus()));
            CHECK(span_size(column_span(a), ring) == oracle::image_size(dense(a), c, ring.modulus()));
        }
    }
    CoeffRing const f(5, 1);
    for (int trial = 0; trial < 30; ++trial) {
        Matrix const a = random_matrix(f, 1 + rng.below(7), 1 + rng.below(7), rng, trial % 3 == 0);
        oracle::IntMatrix m(a.rows(), std::vector<int>(a.cols()));
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j) m[i][j] = static_cast<int>(a(i, j));
        CHECK(rank_mod_p(a) == static_cast<std::size_t>(oracle::rank_mod(m, 5)));
    }
}

TEST_CASE("left inverse and unsolvable systems") {
    CoeffRing const r(3, 2);
    Matrix const b = Matrix::from_rows(r, {{1, 0}, {3, 1}, {2, 5}});
    SubquotientBasis const basis{b, {0, 0}};
    CHECK(left_inverse(basis) * b == Matrix::identity(r, 2));
    // 3 e_0 generates a non-free submodule; e_0 is not in it.
    Matrix const a = Matrix::from_rows(r, {{3}, {0}});
    CHECK_FALSE(solve(a, {1, 0}).has_value());
    CHECK(solve(a, {6, 0}).has_value());
    CHECK_FALSE(column_span(a).is_free());
    CHECK_THROWS_AS(left_inverse(column_span(a)), PreconditionError);
}

TEST_CASE("permutation modules") {
    CoeffRing const f(3, 1);
    auto const s3 = symmetric_group(3);
    CHECK(perm_module(CosetSpace(Subgroup::whole(s3)), f).rank() == 1);
    CHECK(regular_module(s3, f).rank() == 6);
    auto const tau = s3->index_of(Perm::from_cycles(3, "(0 1)"));
    auto const m = perm_module(CosetSpace(Subgroup::generated_by(s3, {tau})), f);
    CHECK(m.rank() == 3);
    for (auto const& g : m.generator_actions()) {
        for (std::size_t c = 0; c < g.cols(); ++c) {
            std::uint64_t sum = 0;
            for (std::size_t r = 0; r < g.rows(); ++r) {
                CHECK(g(r, c) <= 1);
                sum += g(r, c);
            }
            CHECK(sum == 1);
        }
    }
    for (ElemId e = 0; e < s3->order(); ++e) {
        Vec v{1, 2, 0};
        CHECK(m.apply(e, v) == m.action(e).apply(v));
    }
    auto const sum = direct_sum({m, regular_module(s3, f)});
    CHECK(sum.rank() == 9);
    CHECK(sum.is_permutation_module());
}

TEST_CASE("GModule construction checks") {
    CoeffRing const f(5, 1);
    auto const c3 = cyclic_group(3);
    Matrix const swap = Matrix::from_rows(f, {{0, 1}, {1, 0}});
    CHECK_THROWS_AS(GModule(c3, f, 2, {swap}), PreconditionError);
    CHECK_THROWS_AS(GModule(c3, f, 2, {Matrix::from_rows(f, {{1, 1}, {1, 1}})}), PreconditionError);
    CHECK_THROWS_AS(GModule(c3, f, 2, std::vector<Matrix>{}), InputError);
    Matrix const rot = Matrix::from_rows(f, {{0, 0, 1}, {1, 0, 0}, {0, 1, 0}});
    GModule const ok(c3, f, 3, {rot});
    CHECK(ok.action(c3->generator_ids()[0]) == rot);
    CHECK(trivial_module(c3, f, 4).rank() == 4);
    CHECK(trivial_module(cyclic_group(1), f, 2).rank() == 2);
}

TEST_CASE("fixed points and norm image") {
    for (std::uint64_t p : {2u, 3u, 5u, 7u}) {
        CoeffRing const f(p, 1);
        auto const g = cyclic_group(p);
        auto const m = regular_module(g, f);
        ElemId const sigma = g->generator_ids()[0];
        auto const fixed = fixed_points(m, sigma);
        CHECK(fixed.rank() == 1);
        CHECK(contains(fixed, ones(p)));
        auto const norm = norm_image(m, sigma, Subgroup::trivial(g));
        CHECK(norm.rank() == 1);
        CHECK(same_span(fixed, norm));
        CHECK(fixed_points(m, FiniteGroup::identity()).rank() == p);
        CHECK(norm_image(m, FiniteGroup::identity(), Subgroup::trivial(g)).rank() == p);
        CHECK(norm_image(m, sigma, Subgroup::whole(g)).rank() == p);
        CHECK(fixed_points(trivial_module(g, f, 3), sigma).rank() == 3);
    }
    auto const s3 = symmetric_group(3);
    auto const h = Subgroup::generated_by(s3, {s3->index_of(Perm::from_cycles(3, "(0 1)"))});
    CHECK_THROWS_AS(norm_operator(regular_module(s3, CoeffRing(2, 1)), 1, h), PreconditionError);
}

TEST_CASE("coinvariants") {
    CoeffRing const f(3, 1);
    auto const g = dihedral_group(4);
    auto const reg = regular_module(g, f);
    auto const same = coinvariants(reg, Subgroup::trivial(g));
    CHECK(same.rank() == 8);
    CHECK(same.projection == Matrix::identity(f, 8));
    CHECK(coinvariants_by_group(reg).rank() == 1);
    CHECK(coinvariants_by_group(perm_module(CosetSpace(Subgroup::point_stabilizer(g, 0)), f)).rank() == 1);

    // Regular module of C4 over Z/2^3 by the subgroup of order 2: free of rank 2,
    // with the generator acting by a 2-cycle.
    CoeffRing const r(2, 3);
    auto const c4 = cyclic_group(4);
    ElemId const gen = c4->generator_ids()[0];
    auto const sq = Subgroup::generated_by(c4, {c4->mul(gen, gen)});
    auto const q = coinvariants(regular_module(c4, r), sq, {gen});
    CHECK(q.rank() == 2);
    CHECK(q.free_rank() == 2);
    Matrix const qa = q.actions[0];
    CHECK(qa * qa == Matrix::identity(r, 2));
    CHECK_FALSE(qa == Matrix::identity(r, 2));
    CHECK(q.project(q.lift.apply({1, 2})) == Vec{1, 2});

    // Trivial module modulo its own (zero) relations, and Z/p^k torsion in the
    // coinvariants of the sign-twisted module.
    auto const c2 = cyclic_group(2);
    GModule const sign(c2, CoeffRing(3, 2), 1, {Matrix::from_rows(CoeffRing(3, 2), {{8}})});
    auto const sq2 = coinvariants_by_group(sign);
    CHECK(sq2.rank() == 0);  // sigma - 1 = -2 is a unit mod 9
    GModule const sign2(c2, CoeffRing(2, 3), 1, {Matrix::from_rows(CoeffRing(2, 3), {{7}})});
    auto const t = coinvariants_by_group(sign2);
    REQUIRE(t.rank() == 1);
    CHECK(t.exponents[0] == 1);  // Z/8 / 2 Z/8
    CHECK(t.free_rank() == 0);

    // An element outside the normalizer cannot act on the quotient.
    auto const s3 = symmetric_group(3);
    auto const h = Subgroup::generated_by(s3, {s3->index_of(Perm::from_cycles(3, "(0 1)"))});
    CHECK_THROWS_AS(coinvariants(regular_module(s3, f), h, {s3->index_of(Perm::from_cycles(3, "(0 1 2)"))}),
                    PreconditionError);
}

TEST_CASE("restrict") {
    CoeffRing const f(2, 1);
    auto const s3 = symmetric_group(3);
    auto const m = perm_module(CosetSpace(Subgroup::point_stabilizer(s3, 2)), f);
    SubquotientBasis const line{Matrix::from_columns(f, 3, {{1, 0, 0}}), {0}};
    CHECK_THROWS_AS(restrict(m, line), PreconditionError);
    auto const sub = restrict(m, column_span(Matrix::from_columns(f, 3, {{1, 1, 0}, {0, 1, 1}})));
    CHECK(sub.rank() == 2);
}

TEST_CASE("lemma1 suite examples") {
    auto const c3 = cyclic_group(3);
    auto const r3 = lemma1_suite(Subgroup::trivial(c3), c3->generator_ids()[0], 3);
    REQUIRE(r3.checks.size() == 4);
    for (auto const& c : r3.checks) CHECK(c.status == CheckStatus::Pass);

    auto const c4 = cyclic_group(4);
    auto const r4 = lemma1_suite(Subgroup::trivial(c4), c4->generator_ids()[0], 2);
    for (auto const& c : r4.checks) CHECK(c.status == CheckStatus::Pass);

    auto const id = lemma1_suite(Subgroup::trivial(c4), FiniteGroup::identity(), 3);
    CHECK(id.checks[0].status == CheckStatus::Pass);
    CHECK(id.checks[1].status == CheckStatus::Pass);
    CHECK(id.checks[2].status == CheckStatus::NotApplicable);
    CHECK(id.checks[3].status == CheckStatus::Pass);
    CHECK(id.passed());

    auto const s3 = symmetric_group(3);
    auto const h = Subgroup::generated_by(s3, {s3->index_of(Perm::from_cycles(3, "(0 1)"))});
    CHECK_THROWS_AS(lemma1_suite(h, 0, 2), PreconditionError);
}

TEST_CASE("lemma1 checks agree with a dense oracle on C3") {
    // M = F_3[C3]: sigma - 1 has rank 2, the norm is the all-ones matrix.
    oracle::IntMatrix sm1 = {{2, 0, 1}, {1, 2, 0}, {0, 1, 2}};
    CHECK(oracle::rank_mod(sm1, 3) == 2);
    oracle::IntMatrix norm = {{1, 1, 1}, {1, 1, 1}, {1, 1, 1}};
    CHECK(oracle::rank_mod(norm, 3) == 1);

    CoeffRing const f(3, 1);
    auto const c3 = cyclic_group(3);
    auto const m = regular_module(c3, f);
    ElemId const sigma = c3->generator_ids()[0];
    CHECK(column_span(m.action(sigma) - Matrix::identity(f, 3)).rank() == 2);
    CHECK(column_span(norm_operator(m, sigma, Subgroup::trivial(c3))).rank() == 1);
}

TEST_CASE("prop4 counting examples") {
    for (std::uint64_t p : {2u, 3u, 5u}) {
        auto const g = cyclic_group(p);
        auto const r = prop4_counting_check({Subgroup::trivial(g)}, g->generator_ids()[0], p);
        CHECK(r.g_computed == 1);
        CHECK(r.rank_j + 1 == p);
        CHECK(r.pass());
    }
    auto const c4 = cyclic_group(4);
    ElemId const gen = c4->generator_ids()[0];
    auto const two = prop4_counting_check({Subgroup::trivial(c4), Subgroup::trivial(c4)}, gen, 2);
    CHECK(two.g_computed == 2);

    // Exhaustive oracle on S = F_2[C4]^2: the sigma-fixed, coordinate-sum-zero
    // vectors modulo the span of (sigma - 1) applied to them.
    auto const s = direct_sum({regular_module(c4, CoeffRing(2, 1)), regular_module(c4, CoeffRing(2, 1))});
    auto const a = dense(s.action(gen));
    std::vector<oracle::Residues> j_sigma;
    oracle::for_each_vector(8, 2, [&](oracle::Residues const& v) {
        std::uint64_t sum = 0;
        for (auto x : v) sum += x;
        if (sum % 2 == 0 && oracle::mat_vec(a, v, 2) == v) j_sigma.push_back(v);
    });
    std::vector<oracle::Residues> relations;
    for (auto const& v : j_sigma) {
        auto w = oracle::mat_vec(a, v, 2);
        for (std::size_t i = 0; i < 8; ++i) w[i] = (w[i] + 2 - v[i]) % 2;
        relations.push_back(w);
    }
    auto const rel = oracle::additive_span(relations, 8, 2);
    CHECK(j_sigma.size() / rel.size() == 4);  // quotient F_2^2

    CHECK_THROWS_AS(prop4_counting_check({Subgroup::whole(c4)}, gen, 2), PreconditionError);
    CHECK_THROWS_AS(prop4_counting_check({Subgroup::trivial(c4)}, gen, 3), PreconditionError);
    CHECK_THROWS_AS(prop4_counting_check({}, gen, 2), InputError);
}

TEST_CASE("precision coherence") {
    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        auto const g = abelian_group({2 + rng.below(5), 2 + rng.below(4)});
        std::uint64_t const p = trial % 2 ? 2 : 3;
        auto const d = Subgroup::generated_by(g, {g->random_element(rng)});
        ElemId const sigma = g->random_element(rng);
        CoeffRing const big(p, 3), small(p, 1);
        auto const mk = perm_module(CosetSpace(d), big);
        auto const m1 = perm_module(CosetSpace(d), small);
        CHECK(mk.reduced(small).generator_actions() == m1.generator_actions());

        auto const fk = fixed_points(mk, sigma);
        auto const f1 = fixed_points(m1, sigma);
        CHECK(fk.rank() == f1.rank());
        CHECK(fk.is_free());
        CHECK(same_span(column_span(fk.basis.reduced(small)), f1));

        auto const nk = norm_image(mk, sigma, d);
        auto const n1 = norm_image(m1, sigma, d);
        CHECK(column_span(nk.basis.reduced(small)).rank() == n1.rank());
        CHECK(same_span(column_span(nk.basis.reduced(small)), n1));
        CHECK(coinvariants_by_group(mk).rank() == coinvariants_by_group(m1).rank());
    }
}

TEST_CASE("random suites") {
    RandomSuiteOptions opts;
    opts.trials = 30;
    auto const l1 = run_lemma1_suite(21, opts);
    CHECK(l1.passed());
    CHECK(l1.instances.size() == 30);
    for (auto const& inst : l1.instances) CHECK(inst.checks[2].status == CheckStatus::Pass);
    auto const p4 = run_prop4_suite(21, opts);
    CHECK(p4.passed());

    opts.jobs = 3;
    CHECK(to_json(run_lemma1_suite(21, opts)) == to_json(l1));
    CHECK(to_json(run_prop4_suite(21, opts)) == to_json(p4));

    auto const json = to_json(l1);
    CHECK(json.find("\"suite\": \"lemma1\"") != std::string::npos);
    CHECK(json.find("\"witness\"") != std::string::npos);

    opts.trials = 0;
    CHECK_THROWS_AS(run_lemma1_suite(1, opts), InputError);
}
