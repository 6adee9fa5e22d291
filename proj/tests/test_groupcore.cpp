#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aeq/groupcore.hpp"
#include "oracles/brute_group.hpp"

#include <numeric>

using namespace aeq;

namespace {

std::set<oracle::Images> element_set(FiniteGroup const& g) {
    std::set<oracle::Images> out;
    for (auto const& p : g.elements()) out.insert(p.images());
    return out;
}

std::set<oracle::Images> member_set(Subgroup const& h) {
    std::set<oracle::Images> out;
    for (ElemId e : h.members()) out.insert(h.parent()->element(e).images());
    return out;
}

std::uint64_t factorial(std::size_t n) {
    std::uint64_t r = 1;
    for (std::size_t i = 2; i <= n; ++i) r *= i;
    return r;
}

void check_group_properties(GroupPtr const& g, std::uint64_t seed) {
    CHECK(g->element(FiniteGroup::identity()).is_identity());
    CHECK(std::is_sorted(g->elements().begin(), g->elements().end()));
    if (g->degree() <= 12) CHECK(factorial(g->degree()) % g->order() == 0);

    auto const classes = g->conjugacy_classes();
    std::size_t total = 0;
    for (auto const& c : classes) {
        total += c.size();
        CHECK(g->order() % c.size() == 0);
    }
    CHECK(total == g->order());
    CHECK(classes.front() == std::vector<ElemId>{FiniteGroup::identity()});

    Rng rng(seed);
    for (int i = 0; i < 100; ++i) {
        ElemId const a = g->random_element(rng);
        ElemId const b = g->random_element(rng);
        CHECK(g->element(g->mul(a, b)) == g->element(a) * g->element(b));
        CHECK(g->mul(a, g->inverse(a)) == FiniteGroup::identity());
    }
}

void check_coset_space(CosetSpace const& cs, std::uint64_t seed) {
    auto const& g = *cs.parent();
    CHECK(cs.index() * cs.subgroup().order() == g.order());
    CHECK(cs.representative(0) == FiniteGroup::identity());
    std::vector<std::size_t> sizes(cs.index(), 0);
    for (ElemId e = 0; e < g.order(); ++e) ++sizes[cs.coset_of(e)];
    for (std::size_t s : sizes) CHECK(s == cs.subgroup().order());
    for (ElemId h : cs.subgroup().members()) CHECK(cs.act(h, 0) == 0);
    Rng rng(seed);
    for (int i = 0; i < 100; ++i) {
        ElemId const a = g.random_element(rng);
        ElemId const b = g.random_element(rng);
        CHECK(cs.action(g.mul(a, b)) == cs.action(a) * cs.action(b));
    }
}

}  // namespace

TEST_CASE("Perm basics") {
    Perm const p = Perm::from_cycles(5, "(0 1 2)(3 4)");
    CHECK(p.images() == std::vector<std::uint32_t>{1, 2, 0, 4, 3});
    CHECK(p.order() == 6);
    CHECK(p.to_cycle_string() == "(0 1 2)(3 4)");
    CHECK((p * p.inverse()).is_identity());
    CHECK(Perm::from_cycles(3, "()").is_identity());
    CHECK(Perm::identity(4).to_cycle_string() == "()");
    // (0 1) then (1 2): composition applies the right factor first.
    CHECK((Perm::from_cycles(3, "(0 1)") * Perm::from_cycles(3, "(1 2)")).images() ==
          std::vector<std::uint32_t>{1, 2, 0});

    CHECK_THROWS_AS(Perm({0, 0, 1}), InputError);
    CHECK_THROWS_AS(Perm({0, 3}), InputError);
    CHECK_THROWS_AS(Perm::from_cycles(3, "(0 3)"), ParseError);
    CHECK_THROWS_AS(Perm::from_cycles(3, "(0 1"), ParseError);
    CHECK_THROWS_AS(Perm::from_cycles(3, "(0 1)(1 2)"), ParseError);
    try {
        Perm::from_cycles(4, "(0 1) x");
        FAIL("expected ParseError");
    } catch (ParseError const& e) {
        CHECK(e.position() == 6);
    }
}

TEST_CASE("generate_group small cases") {
    auto const c3 = generate_group(3, {Perm::from_cycles(3, "(0 1 2)")});
    CHECK(c3->order() == 3);
    auto const s3 = generate_group(3, {Perm::from_cycles(3, "(0 1)"), Perm::from_cycles(3, "(0 1 2)")});
    CHECK(s3->order() == 6);
    CHECK(generate_group(4, {})->order() == 1);
    CHECK(symmetric_group(5)->order() == 120);
    CHECK(dihedral_group(6)->order() == 12);
    CHECK(cyclic_group(1)->order() == 1);
    CHECK(abelian_group({4, 2})->order() == 8);
    CHECK(abelian_group({4, 2})->is_abelian());
    CHECK_FALSE(s3->is_abelian());
    CHECK_THROWS_AS(generate_group(3, {Perm::from_cycles(4, "(0 1)")}), InputError);
    CHECK_THROWS_AS(generate_group(6, {Perm::from_cycles(6, "(0 1)"), Perm::from_cycles(6, "(0 1 2 3 4 5)")}, 100),
                    ClosureBoundExceeded);

    for (auto const& g : {s3, symmetric_group(5), dihedral_group(7), abelian_group({3, 6})}) {
        std::vector<oracle::Images> gens;
        for (auto const& p : g->generators()) gens.push_back(p.images());
        CHECK(element_set(*g) == oracle::closure(g->degree(), gens));
    }
}

TEST_CASE("words spell out elements") {
    auto const g = gl3f2_point_group();
    for (ElemId e = 0; e < g->order(); ++e) {
        Perm acc = Perm::identity(g->degree());
        for (std::uint32_t j : g->word(e)) acc = acc * g->generators()[j];
        CHECK(acc == g->element(e));
    }
}

TEST_CASE("conjugacy classes") {
    auto const s3 = symmetric_group(3);
    auto const classes = s3->conjugacy_classes();
    std::vector<std::size_t> sizes;
    for (auto const& c : classes) sizes.push_back(c.size());
    CHECK(sizes == std::vector<std::size_t>{1, 3, 2});
    CHECK(cyclic_group(5)->conjugacy_classes().size() == 5);

    for (auto const& g : {symmetric_group(4), dihedral_group(5), gl3f2_point_group(), gl3f2_plane_group()}) {
        std::vector<std::size_t> got;
        for (auto const& c : g->conjugacy_classes()) got.push_back(c.size());
        std::sort(got.begin(), got.end());
        CHECK(got == oracle::class_sizes(element_set(*g)));
    }
    // Frozen from the brute-force oracle above.
    std::vector<std::size_t> gl3;
    for (auto const& c : gl3f2_point_group()->conjugacy_classes()) gl3.push_back(c.size());
    std::sort(gl3.begin(), gl3.end());
    CHECK(gl3 == std::vector<std::size_t>{1, 21, 24, 24, 42, 56});
}

TEST_CASE("group and coset-space invariants") {
    std::uint64_t seed = 1;
    for (auto const& g : {symmetric_group(4), dihedral_group(6), abelian_group({4, 2}), abelian_group({3, 3, 2}),
                          gl3f2_point_group()}) {
        check_group_properties(g, seed++);
        Rng rng(seed);
        for (int i = 0; i < 4; ++i) {
            auto const h = Subgroup::generated_by(g, {g->random_element(rng)});
            CHECK(g->order() % h.order() == 0);
            check_coset_space(CosetSpace(h), seed++);
        }
        check_coset_space(CosetSpace(Subgroup::trivial(g)), seed++);
        check_coset_space(CosetSpace(Subgroup::whole(g)), seed++);
    }
}

TEST_CASE("subgroups") {
    auto const s4 = symmetric_group(4);
    auto const stab = Subgroup::point_stabilizer(s4, 3);
    CHECK(stab.order() == 6);
    CHECK_FALSE(stab.is_normal());
    CHECK(Subgroup::generated_by(s4, stab.generators()).members() == stab.members());
    CHECK(stab.generators().size() <= 2);
    auto const conj = stab.conjugate(s4->index_of(Perm::from_cycles(4, "(2 3)")));
    CHECK(conj.members() == Subgroup::point_stabilizer(s4, 2).members());

    auto const a4 = Subgroup::generated_by(
        s4, {s4->index_of(Perm::from_cycles(4, "(0 1 2)")), s4->index_of(Perm::from_cycles(4, "(1 2 3)"))});
    CHECK(a4.order() == 12);
    CHECK(a4.is_normal());
    CHECK_THROWS_AS(Subgroup::from_members(s4, {0, s4->index_of(Perm::from_cycles(4, "(0 1 2)"))}), InputError);
    CHECK_THROWS_AS(Subgroup::from_members(s4, {1}), InputError);
}

TEST_CASE("coset_order") {
    auto const c4 = cyclic_group(4);
    ElemId const gen = c4->generator_ids()[0];
    CHECK(coset_order(Subgroup::trivial(c4), gen) == 4);
    CHECK(coset_order(Subgroup::trivial(c4), FiniteGroup::identity()) == 1);

    auto const s3 = symmetric_group(3);
    auto const a3 = Subgroup::generated_by(s3, {s3->index_of(Perm::from_cycles(3, "(0 1 2)"))});
    ElemId const tau = s3->index_of(Perm::from_cycles(3, "(0 1)"));
    CHECK(coset_order(a3, tau) == 2);

    auto const h = Subgroup::generated_by(s3, {tau});
    CHECK_THROWS_AS(coset_order(h, tau), PreconditionError);
    CHECK(coset_order(h, tau, CosetOrderMode::PowerInSubgroup) == 1);
    ElemId const rot = s3->index_of(Perm::from_cycles(3, "(0 1 2)"));
    CHECK(coset_order(h, rot, CosetOrderMode::PowerInSubgroup) == 3);

    for (auto const& g : {abelian_group({4, 2}), abelian_group({3, 6}), dihedral_group(4)}) {
        Rng rng(g->order());
        for (int i = 0; i < 5; ++i) {
            auto const d = Subgroup::generated_by(g, {g->random_element(rng)});
            if (!d.is_normal()) continue;
            auto const dset = member_set(d);
            for (ElemId e = 0; e < g->order(); ++e) {
                auto const t = coset_order(d, e);
                CHECK(g->order() % t == 0);
                CHECK((t == 1) == d.contains(e));
                CHECK(t == oracle::power_into(g->element(e).images(), dset));
            }
        }
    }
}

TEST_CASE("find_sigma") {
    auto const c5 = cyclic_group(5);
    auto const s = find_sigma(c5, {Subgroup::trivial(c5)}, 5);
    REQUIRE(s.has_value());
    CHECK(c5->element_order(*s) == 5);
    CHECK_FALSE(find_sigma(c5, {Subgroup::whole(c5)}, 5).has_value());

    auto const g = abelian_group({4, 2});
    auto const d = Subgroup::generated_by(g, {g->index_of(Perm::from_cycles(6, "(4 5)"))});
    auto const found = find_sigma(g, {d}, 2);
    REQUIRE(found.has_value());
    CHECK(g->element_order(*found) == 4);
    // Exhaustive scan oracle: first element in lexicographic order whose
    // power-into-D count is even.
    auto const dset = member_set(d);
    std::optional<oracle::Images> first;
    for (auto const& x : element_set(*g)) {
        if (oracle::power_into(x, dset) % 2 == 0) {
            first = x;
            break;
        }
    }
    REQUIRE(first.has_value());
    CHECK(g->element(*found).images() == *first);

    auto const s3 = symmetric_group(3);
    auto const h = Subgroup::generated_by(s3, {s3->index_of(Perm::from_cycles(3, "(0 1)"))});
    CHECK_THROWS_AS(find_sigma(s3, {h}, 2), PreconditionError);
    CHECK(find_sigma(s3, {h}, 3, CosetOrderMode::PowerInSubgroup).has_value());
}

TEST_CASE("GL3(F2) point and plane actions") {
    auto const mats = gl3f2_matrices();
    CHECK(mats.size() == 168);
    auto const points = gl3f2_point_group();
    auto const planes = gl3f2_plane_group();
    CHECK(points->order() == 168);
    CHECK(planes->order() == 168);

    std::set<oracle::Images> from_mats_points;
    std::set<oracle::Images> from_mats_planes;
    for (auto const& a : mats) {
        from_mats_points.insert(gl3f2_point_action(a).images());
        from_mats_planes.insert(gl3f2_plane_action(a).images());
    }
    CHECK(from_mats_points == element_set(*points));
    CHECK(from_mats_planes == element_set(*planes));

    // The plane action is w -> w A^-1 on functionals; check against explicit
    // inverse matrices found by search.
    for (auto const& a : mats) {
        auto const am = oracle::bit_matrix(a);
        oracle::BitMatrix inv{};
        for (auto const& b : mats) {
            auto const prod = oracle::bit_mul(am, oracle::bit_matrix(b));
            if (prod == oracle::BitMatrix{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}) inv = oracle::bit_matrix(b);
        }
        auto const perm = gl3f2_plane_action(a);
        for (unsigned w = 1; w < 8; ++w) {
            unsigned image = 0;
            for (int j = 0; j < 3; ++j) {
                int bit = 0;
                for (int i = 0; i < 3; ++i) bit ^= ((w >> i) & 1) & inv[i][j];
                image |= static_cast<unsigned>(bit) << j;
            }
            CHECK(perm(w - 1) == image - 1);
        }
        // Point action is a homomorphism from matrix multiplication.
        auto const sq = oracle::bit_mul(am, am);
        F2Matrix sq_rows{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) sq_rows[i] = static_cast<std::uint8_t>(sq_rows[i] | (sq[i][j] << j));
        CHECK(gl3f2_point_action(sq_rows) == gl3f2_point_action(a) * gl3f2_point_action(a));
    }

    auto const h1 = gl3f2_point_stabilizer(points);
    auto const h2 = gl3f2_plane_stabilizer(points);
    CHECK(h1.order() == 24);
    CHECK(h2.order() == 24);
    CHECK(CosetSpace(h1).index() == 7);
    CHECK(CosetSpace(h2).index() == 7);
    CHECK_FALSE(h1.is_normal());
    // H2 is the pull-back of the stabilizer of plane 0.
    for (auto const& a : mats) {
        ElemId const e = points->index_of(gl3f2_point_action(a));
        CHECK(h2.contains(e) == (gl3f2_plane_action(a)(0) == 0));
    }
}

TEST_CASE("named groups and fixtures") {
    CHECK(named_group("cyclic:7")->order() == 7);
    CHECK(named_group("dihedral:5")->order() == 10);
    CHECK(named_group("sym:4")->order() == 24);
    CHECK(named_group("abelian:4x2x3")->order() == 24);
    CHECK(named_group("gl3f2-planes")->order() == 168);
    CHECK_THROWS_AS(named_group("cyclic:"), InputError);
    CHECK_THROWS_AS(named_group("mystery:3"), InputError);
    CHECK_THROWS_AS(named_group("sym:x"), InputError);

    auto const g = parse_group_fixture("# S3\ndegree 3\n(0 1)\n(0 1 2)\n\n");
    CHECK(g->order() == 6);
    CHECK(g->generators().size() == 2);
    CHECK_THROWS_AS(parse_group_fixture("(0 1)\n"), InputError);
    CHECK_THROWS_AS(parse_group_fixture("degree 3\n(0 5)\n"), InputError);
    CHECK_THROWS_AS(load_group("/nonexistent/group.txt"), InputError);

    auto const dp = direct_product(cyclic_group(4), symmetric_group(3));
    CHECK(dp.group->order() == 24);
    CHECK(dp.group->mul(dp.embed_left(1), dp.embed_right(2)) == dp.group->mul(dp.embed_right(2), dp.embed_left(1)));
    CHECK(dp.pair(0, 0) == FiniteGroup::identity());
}
