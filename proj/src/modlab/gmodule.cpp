#include "aeq/modlab.hpp"

#include <algorithm>

namespace aeq {

namespace {

constexpr int kHomomorphismChecks = 100;

Vec apply_word(std::vector<Matrix> const& gens, std::vector<std::uint32_t> const& word, Vec v) {
    for (std::size_t i = word.size(); i-- > 0;) v = gens[word[i]].apply(v);
    return v;
}

Vec random_vector(CoeffRing const& ring, std::size_t n, Rng& rng) {
    Vec v(n);
    for (auto& x : v) x = rng.below(ring.modulus());
    return v;
}

Matrix generators_minus_identity(std::vector<Matrix> const& actions, CoeffRing const& ring, std::size_t rank) {
    Matrix s(ring, rank, 0);
    Matrix const id = Matrix::identity(ring, rank);
    for (auto const& a : actions) s = s.hcat(a - id);
    return s;
}

}  // namespace

GModule::GModule(GroupPtr group, CoeffRing ring, std::size_t rank, std::vector<Matrix> generator_actions,
                 std::uint64_t check_seed)
    : group_(std::move(group)), ring_(ring), rank_(rank), gens_(std::move(generator_actions)) {
    if (gens_.size() != group_->generators().size())
        throw InputError("need one action matrix per group generator (" + std::to_string(group_->generators().size()) +
                         "), got " + std::to_string(gens_.size()));
    for (auto const& a : gens_) {
        if (a.rows() != rank_ || a.cols() != rank_ || !(a.ring() == ring_))
            throw InputError("action matrix has the wrong shape or ring");
        if (rank_mod_p(a) != rank_) throw PreconditionError("action matrix is not invertible mod p");
    }
    Rng rng(check_seed);
    for (int i = 0; i < kHomomorphismChecks && rank_ > 0; ++i) {
        ElemId const a = group_->random_element(rng);
        ElemId const b = group_->random_element(rng);
        auto w = group_->word(a);
        auto const wb = group_->word(b);
        w.insert(w.end(), wb.begin(), wb.end());
        Vec const v = random_vector(ring_, rank_, rng);
        if (apply_word(gens_, w, v) != apply_word(gens_, group_->word(group_->mul(a, b)), v))
            throw PreconditionError("action matrices do not respect the group law");
    }
}

GModule::GModule(GroupPtr group, CoeffRing ring, std::size_t rank, std::vector<PermBlock> blocks)
    : group_(std::move(group)), ring_(ring), rank_(rank), blocks_(std::move(blocks)) {
    for (ElemId g : group_->generator_ids()) gens_.push_back(action(g));
}

Matrix GModule::action(ElemId e) const {
    if (!blocks_.empty()) {
        Matrix m(ring_, rank_, rank_);
        for (auto const& b : blocks_)
            for (std::size_t c = 0; c < b.cosets->index(); ++c) m.at(b.offset + b.cosets->act(e, c), b.offset + c) = 1;
        return m;
    }
    Matrix m = Matrix::identity(ring_, rank_);
    for (std::uint32_t j : group_->word(e)) m = m * gens_[j];
    return m;
}

Vec GModule::apply(ElemId e, Vec const& v) const {
    if (v.size() != rank_) throw InputError("vector length does not match module rank");
    if (blocks_.empty()) return apply_word(gens_, group_->word(e), v);
    Vec out(rank_, 0);
    for (auto const& b : blocks_)
        for (std::size_t c = 0; c < b.cosets->index(); ++c) out[b.offset + b.cosets->act(e, c)] = v[b.offset + c];
    return out;
}

GModule GModule::reduced(CoeffRing const& target) const {
    GModule copy = *this;
    copy.ring_ = target;
    for (auto& g : copy.gens_) g = g.reduced(target);
    return copy;
}

GModule perm_module(CosetSpace const& cs, CoeffRing ring) {
    return GModule(cs.parent(), ring, cs.index(), {GModule::PermBlock{0, std::make_shared<CosetSpace const>(cs)}});
}

GModule regular_module(GroupPtr const& group, CoeffRing ring) {
    return perm_module(CosetSpace(Subgroup::trivial(group)), ring);
}

GModule trivial_module(GroupPtr const& group, CoeffRing ring, std::size_t rank) {
    std::vector<Matrix> gens(group->generators().size(), Matrix::identity(ring, rank));
    return GModule(group, ring, rank, std::move(gens));
}

GModule direct_sum(std::vector<GModule> const& parts) {
    if (parts.empty()) throw InputError("direct sum of no modules");
    auto const& group = parts.front().group();
    auto const& ring = parts.front().ring();
    std::size_t total = 0;
    bool all_perm = true;
    for (auto const& m : parts) {
        if (m.group() != group || !(m.ring() == ring)) throw InputError("direct sum: modules over different groups or rings");
        total += m.rank();
        all_perm = all_perm && !m.blocks_.empty();
    }
    if (all_perm) {
        std::vector<GModule::PermBlock> blocks;
        std::size_t offset = 0;
        for (auto const& m : parts) {
            for (auto const& b : m.blocks_) blocks.push_back({offset + b.offset, b.cosets});
            offset += m.rank();
        }
        return GModule(group, ring, total, std::move(blocks));
    }
    std::vector<Matrix> gens;
    for (std::size_t j = 0; j < group->generators().size(); ++j) {
        Matrix a(ring, total, total);
        std::size_t offset = 0;
        for (auto const& m : parts) {
            auto const& g = m.generator_actions()[j];
            for (std::size_t r = 0; r < m.rank(); ++r)
                for (std::size_t c = 0; c < m.rank(); ++c) a.at(offset + r, offset + c) = g(r, c);
            offset += m.rank();
        }
        gens.push_back(std::move(a));
    }
    return GModule(group, ring, total, std::move(gens));
}

GModule restrict(GModule const& m, SubquotientBasis const& sub) {
    if (!sub.is_free()) throw PreconditionError("restriction needs a free submodule");
    if (sub.basis.rows() != m.rank()) throw InputError("submodule basis does not match module rank");
    Matrix const left = left_inverse(sub);
    std::vector<Matrix> gens;
    for (auto const& a : m.generator_actions()) {
        Matrix const image = a * sub.basis;
        Matrix y = left * image;
        if (!(sub.basis * y == image)) throw PreconditionError("submodule is not stable under the group action");
        gens.push_back(std::move(y));
    }
    return GModule(m.group(), m.ring(), sub.rank(), std::move(gens));
}

SubquotientBasis fixed_points(GModule const& m, ElemId sigma) {
    return kernel(m.action(sigma) - Matrix::identity(m.ring(), m.rank()));
}

Matrix norm_operator(GModule const& m, ElemId sigma, Subgroup const& d) {
    if (d.parent() != m.group()) throw InputError("subgroup of a different group");
    std::uint64_t const f = coset_order(d, sigma, CosetOrderMode::RequireNormal);
    Matrix n(m.ring(), m.rank(), m.rank());
    ElemId power = FiniteGroup::identity();
    for (std::uint64_t t = 0; t < f; ++t) {
        n = n + m.action(power);
        power = m.group()->mul(power, sigma);
    }
    return n;
}

SubquotientBasis norm_image(GModule const& m, ElemId sigma, Subgroup const& d) {
    return column_span(norm_operator(m, sigma, d));
}

SubquotientBasis augmentation_image(GModule const& m) {
    return column_span(generators_minus_identity(m.generator_actions(), m.ring(), m.rank()));
}

std::size_t Coinvariants::free_rank() const {
    return static_cast<std::size_t>(std::count(exponents.begin(), exponents.end(), ring.k()));
}

Matrix Coinvariants::normalize_rows(Matrix m) const {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::uint64_t const mod = ring.p_power(exponents[i]);
        if (mod == 0) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) %= mod;
    }
    return m;
}

Vec Coinvariants::project(Vec const& x) const {
    Vec y = projection.apply(x);
    for (std::size_t i = 0; i < y.size(); ++i) {
        std::uint64_t const mod = ring.p_power(exponents[i]);
        if (mod) y[i] %= mod;
    }
    return y;
}

namespace {

Coinvariants quotient_by(GModule const& m, Matrix const& span, std::vector<ElemId> const& acting) {
    auto const& ring = m.ring();
    auto const s = smith_form(span);
    std::vector<std::size_t> keep;
    std::vector<unsigned> exps;
    for (std::size_t i = 0; i < m.rank(); ++i) {
        unsigned const e = i < s.exponents.size() ? s.exponents[i] : ring.k();
        if (e == 0) continue;
        keep.push_back(i);
        exps.push_back(e);
    }
    Coinvariants q{ring, exps, s.u.rows_subset(keep), s.u_inv.columns(keep), acting, {}};
    for (ElemId a : acting) {
        Matrix const act = m.action(a);
        if (!q.normalize_rows(q.projection * act * span).is_zero())
            throw PreconditionError("acting element does not preserve the coinvariant relations");
        q.actions.push_back(q.normalize_rows(q.projection * act * q.lift));
    }
    return q;
}

}  // namespace

Coinvariants coinvariants(GModule const& m, Subgroup const& h, std::vector<ElemId> const& acting) {
    if (h.parent() != m.group()) throw InputError("subgroup of a different group");
    std::vector<Matrix> actions;
    for (ElemId g : h.generators()) actions.push_back(m.action(g));
    return quotient_by(m, generators_minus_identity(actions, m.ring(), m.rank()), acting);
}

Coinvariants coinvariants_by_group(GModule const& m) {
    return quotient_by(m, generators_minus_identity(m.generator_actions(), m.ring(), m.rank()), {});
}

}  // namespace aeq
