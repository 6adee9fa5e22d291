#ifndef AEQ_GROUPCORE_HPP_
#define AEQ_GROUPCORE_HPP_

// Finite groups realized as permutation groups. Elements are addressed by
// their index in the canonical (lexicographic on images) ordering, so the
// identity is always element 0 and every "first element" choice downstream
// is deterministic.

#include "aeq/errors.hpp"
#include "aeq/rng.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace aeq {

class Perm {
public:
    Perm() = default;
    // Throws InputError unless `images` is a bijection on {0..n-1}.
    explicit Perm(std::vector<std::uint32_t> images);

    static Perm identity(std::size_t degree);
    // Cycle notation such as "(0 1 2)(3 4)"; "()" or "" is the identity.
    static Perm from_cycles(std::size_t degree, std::string_view text);

    std::size_t degree() const noexcept { return images_.size(); }
    std::uint32_t operator()(std::uint32_t x) const { return images_[x]; }
    std::vector<std::uint32_t> const& images() const noexcept { return images_; }

    // (g * h)(x) = g(h(x)).
    Perm operator*(Perm const& h) const;
    Perm inverse() const;
    bool is_identity() const;
    std::uint64_t order() const;
    std::string to_cycle_string() const;

    friend bool operator==(Perm const&, Perm const&) = default;
    friend auto operator<=>(Perm const&, Perm const&) = default;

private:
    std::vector<std::uint32_t> images_;
};

struct PermHash {
    std::size_t operator()(Perm const& p) const noexcept;
};

using ElemId = std::uint32_t;

class FiniteGroup;
using GroupPtr = std::shared_ptr<FiniteGroup const>;

class FiniteGroup {
public:
    static constexpr std::size_t kDefaultClosureBound = 1000000;

    // Breadth-first closure of the generators. Throws ClosureBoundExceeded
    // once more than `bound` elements are found.
    FiniteGroup(std::size_t degree, std::vector<Perm> generators, std::size_t bound = kDefaultClosureBound);

    std::size_t degree() const noexcept { return degree_; }
    std::size_t order() const noexcept { return elements_.size(); }
    std::vector<Perm> const& elements() const noexcept { return elements_; }
    Perm const& element(ElemId e) const { return elements_.at(e); }
    std::vector<Perm> const& generators() const noexcept { return generators_; }
    std::vector<ElemId> const& generator_ids() const noexcept { return generator_ids_; }

    static constexpr ElemId identity() noexcept { return 0; }
    ElemId mul(ElemId a, ElemId b) const;
    ElemId inverse(ElemId e) const { return inverse_[e]; }
    ElemId conjugate(ElemId g, ElemId x) const { return mul(mul(g, x), inverse(g)); }  // g x g^-1
    ElemId power(ElemId e, long long exponent) const;
    std::uint64_t element_order(ElemId e) const { return elements_[e].order(); }

    std::optional<ElemId> find(Perm const& p) const;
    ElemId index_of(Perm const& p) const;  // throws InputError if p is not in the group

    // Generator indices w with e = gen[w0] * gen[w1] * ... ; empty for identity.
    std::vector<std::uint32_t> word(ElemId e) const;

    bool is_abelian() const;
    // Disjoint classes, each sorted; classes ordered by least member, so the
    // identity class comes first.
    std::vector<std::vector<ElemId>> conjugacy_classes() const;

    ElemId random_element(Rng& rng) const { return static_cast<ElemId>(rng.below(order())); }

private:
    std::size_t degree_;
    std::vector<Perm> generators_;
    std::vector<ElemId> generator_ids_;
    std::vector<Perm> elements_;
    std::unordered_map<Perm, ElemId, PermHash> index_;
    std::vector<ElemId> inverse_;
    std::vector<ElemId> tree_parent_;
    std::vector<std::uint32_t> tree_gen_;
    std::vector<ElemId> table_;  // Cayley table for small groups, else empty
};

GroupPtr generate_group(std::size_t degree, std::vector<Perm> generators,
                        std::size_t bound = FiniteGroup::kDefaultClosureBound);

class Subgroup {
public:
    // Closure of the given elements inside `parent`.
    static Subgroup generated_by(GroupPtr parent, std::vector<ElemId> const& generators);
    // Throws InputError unless `members` is closed and contains the identity.
    static Subgroup from_members(GroupPtr parent, std::vector<ElemId> members);
    static Subgroup trivial(GroupPtr parent);
    static Subgroup whole(GroupPtr parent);
    static Subgroup point_stabilizer(GroupPtr parent, std::uint32_t point);
    static Subgroup setwise_stabilizer(GroupPtr parent, std::vector<std::uint32_t> const& points);

    GroupPtr const& parent() const noexcept { return parent_; }
    std::size_t order() const noexcept { return members_.size(); }
    std::vector<ElemId> const& members() const noexcept { return members_; }
    bool contains(ElemId e) const { return mask_[e]; }
    // A small generating set, chosen greedily in canonical order.
    std::vector<ElemId> const& generators() const noexcept { return generators_; }

    bool is_normal() const;
    Subgroup conjugate(ElemId g) const;  // g H g^-1

private:
    Subgroup(GroupPtr parent, std::vector<ElemId> members);

    GroupPtr parent_;
    std::vector<ElemId> members_;
    std::vector<bool> mask_;
    std::vector<ElemId> generators_;
};

// Left cosets xH ordered by least member, so coset 0 is H. G acts by left
// multiplication.
class CosetSpace {
public:
    explicit CosetSpace(Subgroup subgroup);

    GroupPtr const& parent() const noexcept { return subgroup_.parent(); }
    Subgroup const& subgroup() const noexcept { return subgroup_; }
    std::size_t index() const noexcept { return reps_.size(); }
    ElemId representative(std::size_t coset) const { return reps_.at(coset); }
    std::vector<ElemId> const& representatives() const noexcept { return reps_; }
    std::uint32_t coset_of(ElemId e) const { return coset_of_[e]; }
    std::vector<ElemId> members(std::size_t coset) const;

    std::uint32_t act(ElemId g, std::size_t coset) const;
    Perm action(ElemId g) const;

private:
    Subgroup subgroup_;
    std::vector<ElemId> reps_;
    std::vector<std::uint32_t> coset_of_;
};

enum class CosetOrderMode {
    RequireNormal,     // D must be normal; throws PreconditionError otherwise
    PowerInSubgroup,   // least t >= 1 with sigma^t in D, for any D
};

std::uint64_t coset_order(Subgroup const& d, ElemId sigma, CosetOrderMode mode = CosetOrderMode::RequireNormal);

// First element in canonical order whose coset order is divisible by p for
// every listed subgroup, or nullopt.
std::optional<ElemId> find_sigma(GroupPtr const& group, std::vector<Subgroup> const& subgroups, std::uint64_t p,
                                 CosetOrderMode mode = CosetOrderMode::RequireNormal);

struct DirectProduct {
    GroupPtr group;  // acts on the disjoint union of the two point sets
    GroupPtr left;
    GroupPtr right;
    ElemId embed_left(ElemId a) const;
    ElemId embed_right(ElemId b) const;
    ElemId pair(ElemId a, ElemId b) const { return group->mul(embed_left(a), embed_right(b)); }
};

DirectProduct direct_product(GroupPtr left, GroupPtr right);

GroupPtr cyclic_group(std::size_t n);
GroupPtr dihedral_group(std::size_t n);  // order 2n, acting on n points
GroupPtr symmetric_group(std::size_t n);
// Z/n1 x Z/n2 x ... acting on n1 + n2 + ... points.
GroupPtr abelian_group(std::vector<std::size_t> const& invariants);

// GL_3(F_2). Point i is the nonzero column vector with bit pattern i + 1;
// plane j is the kernel of the functional with bit pattern j + 1.
using F2Matrix = std::array<std::uint8_t, 3>;  // rows as 3-bit masks

std::vector<F2Matrix> gl3f2_matrices();             // all 168, sorted
Perm gl3f2_point_action(F2Matrix const& a);         // v -> A v
Perm gl3f2_plane_action(F2Matrix const& a);         // ker w -> A ker w = ker(w A^-1)
std::vector<F2Matrix> gl3f2_generator_matrices();   // the six elementary transvections
GroupPtr gl3f2_point_group();
GroupPtr gl3f2_plane_group();
// In the point-action group: stabilizer of point 0 and stabilizer of the
// plane x_0 = 0 (points 1, 3, 5).
Subgroup gl3f2_point_stabilizer(GroupPtr const& points);
Subgroup gl3f2_plane_stabilizer(GroupPtr const& points);

// cyclic:<n>, dihedral:<n>, sym:<n>, abelian:<n1>x<n2>..., gl3f2-points,
// gl3f2-planes. Throws InputError on unknown names.
GroupPtr named_group(std::string const& spec);

// "degree n" line followed by one generator per line in cycle notation.
// Blank lines and lines starting with '#' are skipped.
GroupPtr parse_group_fixture(std::string const& text);
GroupPtr load_group(std::string const& name_or_path);

}  // namespace aeq

#endif  // AEQ_GROUPCORE_HPP_
