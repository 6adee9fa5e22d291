#include "aeq/groupcore.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <unordered_set>

namespace aeq {

namespace {

constexpr std::size_t kCayleyTableLimit = 1024;
constexpr std::uint32_t kUnassigned = std::numeric_limits<std::uint32_t>::max();

}  // namespace

FiniteGroup::FiniteGroup(std::size_t degree, std::vector<Perm> generators, std::size_t bound)
    : degree_(degree), generators_(std::move(generators)) {
    for (auto const& g : generators_)
        if (g.degree() != degree_)
            throw InputError("generator " + g.to_cycle_string() + " has degree " + std::to_string(g.degree()) +
                             ", expected " + std::to_string(degree_));

    std::unordered_set<Perm, PermHash> seen;
    std::deque<Perm> queue;
    Perm const id = Perm::identity(degree_);
    seen.insert(id);
    queue.push_back(id);
    while (!queue.empty()) {
        Perm const cur = std::move(queue.front());
        queue.pop_front();
        for (auto const& g : generators_) {
            Perm next = g * cur;
            if (seen.contains(next)) continue;
            if (seen.size() >= bound)
                throw ClosureBoundExceeded("group closure exceeds " + std::to_string(bound) + " elements");
            seen.insert(next);
            queue.push_back(std::move(next));
        }
    }

    elements_.assign(seen.begin(), seen.end());
    std::sort(elements_.begin(), elements_.end());
    index_.reserve(elements_.size());
    for (std::size_t i = 0; i < elements_.size(); ++i) index_.emplace(elements_[i], static_cast<ElemId>(i));

    inverse_.resize(elements_.size());
    for (std::size_t i = 0; i < elements_.size(); ++i) inverse_[i] = index_.at(elements_[i].inverse());
    for (auto const& g : generators_) generator_ids_.push_back(index_.at(g));

    std::size_t const n = elements_.size();
    if (n <= kCayleyTableLimit) {
        table_.resize(n * n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) table_[a * n + b] = index_.at(elements_[a] * elements_[b]);
    }

    tree_parent_.assign(n, kUnassigned);
    tree_gen_.assign(n, 0);
    std::deque<ElemId> bfs{identity()};
    tree_parent_[identity()] = identity();
    while (!bfs.empty()) {
        ElemId const cur = bfs.front();
        bfs.pop_front();
        for (std::uint32_t j = 0; j < generator_ids_.size(); ++j) {
            ElemId const next = mul(generator_ids_[j], cur);
            if (tree_parent_[next] != kUnassigned) continue;
            tree_parent_[next] = cur;
            tree_gen_[next] = j;
            bfs.push_back(next);
        }
    }
}

ElemId FiniteGroup::mul(ElemId a, ElemId b) const {
    if (!table_.empty()) return table_[static_cast<std::size_t>(a) * elements_.size() + b];
    return index_.at(elements_[a] * elements_[b]);
}

ElemId FiniteGroup::power(ElemId e, long long exponent) const {
    if (exponent < 0) {
        e = inverse(e);
        exponent = -exponent;
    }
    ElemId acc = identity();
    while (exponent > 0) {
        if (exponent & 1) acc = mul(acc, e);
        e = mul(e, e);
        exponent >>= 1;
    }
    return acc;
}

std::optional<ElemId> FiniteGroup::find(Perm const& p) const {
    auto const it = index_.find(p);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

ElemId FiniteGroup::index_of(Perm const& p) const {
    auto const id = find(p);
    if (!id) throw InputError("permutation " + p.to_cycle_string() + " is not in the group");
    return *id;
}

std::vector<std::uint32_t> FiniteGroup::word(ElemId e) const {
    std::vector<std::uint32_t> w;
    for (ElemId cur = e; cur != identity(); cur = tree_parent_[cur]) w.push_back(tree_gen_[cur]);
    return w;
}

bool FiniteGroup::is_abelian() const {
    for (ElemId a : generator_ids_)
        for (ElemId b : generator_ids_)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

std::vector<std::vector<ElemId>> FiniteGroup::conjugacy_classes() const {
    std::vector<std::vector<ElemId>> classes;
    std::vector<bool> assigned(order(), false);
    for (ElemId x = 0; x < order(); ++x) {
        if (assigned[x]) continue;
        std::vector<ElemId> cls{x};
        assigned[x] = true;
        for (std::size_t i = 0; i < cls.size(); ++i) {
            for (ElemId g : generator_ids_) {
                ElemId const y = conjugate(g, cls[i]);
                if (assigned[y]) continue;
                assigned[y] = true;
                cls.push_back(y);
            }
        }
        std::sort(cls.begin(), cls.end());
        classes.push_back(std::move(cls));
    }
    return classes;
}

GroupPtr generate_group(std::size_t degree, std::vector<Perm> generators, std::size_t bound) {
    return std::make_shared<FiniteGroup const>(degree, std::move(generators), bound);
}

Subgroup::Subgroup(GroupPtr parent, std::vector<ElemId> members)
    : parent_(std::move(parent)), members_(std::move(members)), mask_(parent_->order(), false) {
    for (ElemId m : members_) mask_[m] = true;

    std::vector<bool> span(parent_->order(), false);
    std::vector<ElemId> span_list{FiniteGroup::identity()};
    span[FiniteGroup::identity()] = true;
    for (ElemId m : members_) {
        if (span[m]) continue;
        generators_.push_back(m);
        for (std::size_t i = 0; i < span_list.size(); ++i) {
            for (ElemId g : generators_) {
                ElemId const y = parent_->mul(span_list[i], g);
                if (span[y]) continue;
                span[y] = true;
                span_list.push_back(y);
            }
        }
    }
}

Subgroup Subgroup::generated_by(GroupPtr parent, std::vector<ElemId> const& generators) {
    std::vector<bool> in(parent->order(), false);
    std::vector<ElemId> members{FiniteGroup::identity()};
    in[FiniteGroup::identity()] = true;
    for (std::size_t i = 0; i < members.size(); ++i) {
        for (ElemId g : generators) {
            ElemId const y = parent->mul(members[i], g);
            if (in[y]) continue;
            in[y] = true;
            members.push_back(y);
        }
    }
    std::sort(members.begin(), members.end());
    return Subgroup(std::move(parent), std::move(members));
}

Subgroup Subgroup::from_members(GroupPtr parent, std::vector<ElemId> members) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (members.empty() || members.front() != FiniteGroup::identity())
        throw InputError("subgroup must contain the identity");
    if (members.back() >= parent->order()) throw InputError("subgroup member outside the parent group");
    std::vector<bool> in(parent->order(), false);
    for (ElemId m : members) in[m] = true;
    for (ElemId a : members)
        for (ElemId b : members)
            if (!in[parent->mul(a, b)]) throw InputError("subgroup members are not closed under composition");
    return Subgroup(std::move(parent), std::move(members));
}

Subgroup Subgroup::trivial(GroupPtr parent) { return Subgroup(std::move(parent), {FiniteGroup::identity()}); }

Subgroup Subgroup::whole(GroupPtr parent) {
    std::vector<ElemId> all(parent->order());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<ElemId>(i);
    return Subgroup(std::move(parent), std::move(all));
}

Subgroup Subgroup::point_stabilizer(GroupPtr parent, std::uint32_t point) {
    if (point >= parent->degree()) throw InputError("stabilized point out of range");
    std::vector<ElemId> members;
    for (ElemId e = 0; e < parent->order(); ++e)
        if (parent->element(e)(point) == point) members.push_back(e);
    return Subgroup(std::move(parent), std::move(members));
}

Subgroup Subgroup::setwise_stabilizer(GroupPtr parent, std::vector<std::uint32_t> const& points) {
    std::vector<bool> in(parent->degree(), false);
    for (std::uint32_t p : points) {
        if (p >= parent->degree()) throw InputError("stabilized point out of range");
        in[p] = true;
    }
    std::vector<ElemId> members;
    for (ElemId e = 0; e < parent->order(); ++e) {
        auto const& g = parent->element(e);
        if (std::all_of(points.begin(), points.end(), [&](std::uint32_t p) { return in[g(p)]; }))
            members.push_back(e);
    }
    return Subgroup(std::move(parent), std::move(members));
}

bool Subgroup::is_normal() const {
    for (ElemId g : parent_->generator_ids())
        for (ElemId h : generators_)
            if (!contains(parent_->conjugate(g, h))) return false;
    return true;
}

Subgroup Subgroup::conjugate(ElemId g) const {
    std::vector<ElemId> members;
    members.reserve(members_.size());
    for (ElemId h : members_) members.push_back(parent_->conjugate(g, h));
    std::sort(members.begin(), members.end());
    return Subgroup(parent_, std::move(members));
}

CosetSpace::CosetSpace(Subgroup subgroup) : subgroup_(std::move(subgroup)) {
    auto const& g = *subgroup_.parent();
    coset_of_.assign(g.order(), kUnassigned);
    for (ElemId x = 0; x < g.order(); ++x) {
        if (coset_of_[x] != kUnassigned) continue;
        auto const c = static_cast<std::uint32_t>(reps_.size());
        reps_.push_back(x);
        for (ElemId h : subgroup_.members()) coset_of_[g.mul(x, h)] = c;
    }
}

std::vector<ElemId> CosetSpace::members(std::size_t coset) const {
    std::vector<ElemId> out;
    for (ElemId h : subgroup_.members()) out.push_back(parent()->mul(reps_.at(coset), h));
    std::sort(out.begin(), out.end());
    return out;
}

std::uint32_t CosetSpace::act(ElemId g, std::size_t coset) const {
    return coset_of_[parent()->mul(g, reps_.at(coset))];
}

Perm CosetSpace::action(ElemId g) const {
    std::vector<std::uint32_t> images(index());
    for (std::size_t c = 0; c < index(); ++c) images[c] = act(g, c);
    return Perm(std::move(images));
}

std::uint64_t coset_order(Subgroup const& d, ElemId sigma, CosetOrderMode mode) {
    if (mode == CosetOrderMode::RequireNormal && !d.is_normal())
        throw PreconditionError("coset order needs a normal subgroup; use the power-in-subgroup mode");
    auto const& g = *d.parent();
    std::uint64_t t = 1;
    for (ElemId cur = sigma; !d.contains(cur); cur = g.mul(cur, sigma)) ++t;
    return t;
}

std::optional<ElemId> find_sigma(GroupPtr const& group, std::vector<Subgroup> const& subgroups, std::uint64_t p,
                                 CosetOrderMode mode) {
    for (auto const& d : subgroups) {
        if (d.parent() != group) throw InputError("find_sigma: subgroup of a different group");
        if (mode == CosetOrderMode::RequireNormal && !d.is_normal())
            throw PreconditionError("find_sigma: subgroup of order " + std::to_string(d.order()) + " is not normal");
    }
    for (ElemId e = 0; e < group->order(); ++e) {
        bool const ok = std::all_of(subgroups.begin(), subgroups.end(), [&](Subgroup const& d) {
            return coset_order(d, e, CosetOrderMode::PowerInSubgroup) % p == 0;
        });
        if (ok) return e;
    }
    return std::nullopt;
}

}  // namespace aeq
