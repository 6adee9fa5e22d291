#ifndef AEQ_MODLAB_HPP_
#define AEQ_MODLAB_HPP_

// Exact linear algebra over Z/p^k and modules over (Z/p^k)[G] for finite
// permutation groups G, with executable checks of the fixed-point, norm and
// coinvariant identities used for permutation modules.

#include "aeq/errors.hpp"
#include "aeq/groupcore.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace aeq {

// Integers mod p^k. p^k must stay below 2^32 so that products of two
// residues fit in 64 bits.
class CoeffRing {
public:
    CoeffRing(std::uint64_t p, unsigned k);

    std::uint64_t p() const noexcept { return p_; }
    unsigned k() const noexcept { return k_; }
    std::uint64_t modulus() const noexcept { return q_; }
    bool is_field() const noexcept { return k_ == 1; }
    CoeffRing with_precision(unsigned k) const { return CoeffRing(p_, k); }

    std::uint64_t reduce(std::int64_t v) const;
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % q_; }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + q_ - b) % q_; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return a * b % q_; }
    std::uint64_t neg(std::uint64_t a) const { return (q_ - a) % q_; }
    // Exponent of the largest power of p dividing a; k for a = 0.
    unsigned valuation(std::uint64_t a) const;
    bool is_unit(std::uint64_t a) const { return a % p_ != 0; }
    std::uint64_t inverse(std::uint64_t a) const;  // throws PreconditionError for non-units
    std::uint64_t p_power(unsigned e) const;

    std::string to_string() const;
    friend bool operator==(CoeffRing const& a, CoeffRing const& b) { return a.p_ == b.p_ && a.k_ == b.k_; }

private:
    std::uint64_t p_;
    unsigned k_;
    std::uint64_t q_;
};

using Vec = std::vector<std::uint64_t>;

class Matrix {
public:
    Matrix(CoeffRing ring, std::size_t rows, std::size_t cols);
    static Matrix identity(CoeffRing ring, std::size_t n);
    static Matrix from_rows(CoeffRing ring, std::vector<std::vector<std::int64_t>> const& rows);
    // Columns of the result are the given vectors.
    static Matrix from_columns(CoeffRing ring, std::size_t rows, std::vector<Vec> const& cols);

    CoeffRing const& ring() const noexcept { return ring_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::uint64_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    std::uint64_t& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

    Vec column(std::size_t j) const;
    Vec row(std::size_t i) const;
    Matrix columns(std::vector<std::size_t> const& idx) const;
    Matrix rows_subset(std::vector<std::size_t> const& idx) const;
    Matrix transpose() const;
    Matrix hcat(Matrix const& right) const;
    Matrix vcat(Matrix const& below) const;
    // Entries reduced into a ring of lower precision with the same p.
    Matrix reduced(CoeffRing const& target) const;
    bool is_zero() const;

    Vec apply(Vec const& v) const;
    Matrix operator*(Matrix const& b) const;
    Matrix operator+(Matrix const& b) const;
    Matrix operator-(Matrix const& b) const;
    friend bool operator==(Matrix const& a, Matrix const& b) {
        return a.ring_ == b.ring_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    CoeffRing ring_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<std::uint64_t> data_;
};

/* U A V = D with U, V invertible and D diagonal with entries p^e_0, p^e_1,
 * ... (e_i nondecreasing, e_i = k meaning zero). The pivot at each step is
 * the first entry of least valuation in column-major order. */
struct SmithForm {
    std::vector<unsigned> exponents;  // length min(rows, cols)
    Matrix u;
    Matrix u_inv;
    Matrix v;
};

SmithForm smith_form(Matrix const& a);
std::size_t rank_mod_p(Matrix const& a);

// Columns generating a submodule of (Z/p^k)^r; column j equals p^divisibility[j]
// times a primitive vector, and the generating set is minimal.
struct SubquotientBasis {
    Matrix basis;
    std::vector<unsigned> divisibility;

    std::size_t rank() const noexcept { return basis.cols(); }
    bool is_free() const;
};

SubquotientBasis column_span(Matrix const& a);
SubquotientBasis kernel(Matrix const& a);
// Some x with A x = b, if one exists.
std::optional<Vec> solve(Matrix const& a, Vec const& b);
bool contains(SubquotientBasis const& span, Vec const& v);
// First column of `inner` outside `outer`, or nullopt when inner is contained.
std::optional<Vec> containment_witness(SubquotientBasis const& outer, SubquotientBasis const& inner);
bool same_span(SubquotientBasis const& a, SubquotientBasis const& b);

// Left inverse of a free basis (s x r matrix L with L B = I).
Matrix left_inverse(SubquotientBasis const& free_basis);

class GModule {
public:
    /* Module given by one invertible matrix per group generator. Checks
     * invertibility mod p and that the generator matrices respect the group
     * law on 100 random products (throws PreconditionError otherwise). */
    GModule(GroupPtr group, CoeffRing ring, std::size_t rank, std::vector<Matrix> generator_actions,
            std::uint64_t check_seed = 0);

    GroupPtr const& group() const noexcept { return group_; }
    CoeffRing const& ring() const noexcept { return ring_; }
    std::size_t rank() const noexcept { return rank_; }
    std::vector<Matrix> const& generator_actions() const noexcept { return gens_; }
    bool is_permutation_module() const noexcept { return !blocks_.empty() || rank_ == 0; }

    Matrix action(ElemId e) const;
    Vec apply(ElemId e, Vec const& v) const;

    // A copy with the given precision (same p, lower or equal k).
    GModule reduced(CoeffRing const& target) const;

private:
    friend GModule perm_module(CosetSpace const& cs, CoeffRing ring);
    friend GModule direct_sum(std::vector<GModule> const& parts);

    struct PermBlock {
        std::size_t offset;
        std::shared_ptr<CosetSpace const> cosets;
    };

    GModule(GroupPtr group, CoeffRing ring, std::size_t rank, std::vector<PermBlock> blocks);

    GroupPtr group_;
    CoeffRing ring_;
    std::size_t rank_;
    std::vector<Matrix> gens_;
    std::vector<PermBlock> blocks_;
};

GModule perm_module(CosetSpace const& cs, CoeffRing ring);
GModule regular_module(GroupPtr const& group, CoeffRing ring);
GModule trivial_module(GroupPtr const& group, CoeffRing ring, std::size_t rank);
GModule direct_sum(std::vector<GModule> const& parts);

// The G-module structure on a free G-stable submodule, in the coordinates of
// its basis. Throws PreconditionError if the basis is not free or the span is
// not G-stable.
GModule restrict(GModule const& m, SubquotientBasis const& sub);

// ker(action(sigma) - 1).
SubquotientBasis fixed_points(GModule const& m, ElemId sigma);
// sum_{t < f} action(sigma)^t with f the order of sigma D; D must be normal.
Matrix norm_operator(GModule const& m, ElemId sigma, Subgroup const& d);
SubquotientBasis norm_image(GModule const& m, ElemId sigma, Subgroup const& d);
// Span of (g - 1) M over the group generators g.
SubquotientBasis augmentation_image(GModule const& m);

/* M / sum_h (h - 1) M for generators h of a subgroup, as a direct sum of
 * cyclic modules Z/p^e_i (e_i >= 1). projection maps M onto the component
 * coordinates, lift is a section of it, and `actions[j]` is the induced
 * action of `acting[j]`, which must normalize the subgroup's span. */
struct Coinvariants {
    CoeffRing ring;
    std::vector<unsigned> exponents;
    Matrix projection;
    Matrix lift;
    std::vector<ElemId> acting;
    std::vector<Matrix> actions;

    std::size_t rank() const noexcept { return exponents.size(); }
    std::size_t free_rank() const;
    // Component coordinates of the class of x, each reduced mod p^e_i.
    Vec project(Vec const& x) const;
    // Reduce the rows of a map into the quotient to their component moduli.
    Matrix normalize_rows(Matrix m) const;
};

Coinvariants coinvariants(GModule const& m, Subgroup const& h, std::vector<ElemId> const& acting = {});
Coinvariants coinvariants_by_group(GModule const& m);

enum class CheckStatus { Pass, Fail, NotApplicable };
std::string to_string(CheckStatus s);

struct CheckResult {
    std::string name;
    CheckStatus status;
    Vec witness;  // a vector exhibiting the failure, empty otherwise
    std::string detail;
};

using ParamValue = std::variant<std::int64_t, std::string, std::vector<std::string>>;

struct InstanceReport {
    std::string group;
    std::vector<std::pair<std::string, ParamValue>> params;
    std::vector<CheckResult> checks;
    bool passed() const;
};

struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    std::vector<InstanceReport> instances;
    bool passed() const;
};

std::string to_json(SuiteReport const& report);

/* Checks on M = F_p[G/D]:
 *   (1a) M^sigma equals the image of the norm operator,
 *   (1b) the kernel of the norm operator equals (sigma - 1) M,
 *   (2)  M^sigma lies in I_G M when p divides the order of sigma D,
 *   (3)  the G-coinvariants of M^sigma have rank 1.
 * D must be normal and M^sigma G-stable. */
InstanceReport lemma1_suite(Subgroup const& d, ElemId sigma, std::uint64_t p, std::string const& group_label = "");

struct Prop4Result {
    std::size_t g_computed;
    std::size_t expected;
    std::size_t rank_j;
    std::size_t index_sum;
    bool pass() const { return g_computed == expected && rank_j + 1 == index_sum; }
};

/* S = direct sum of F_p[G/D_i], J = kernel of the coordinate-sum map S -> F_p,
 * and the rank of (J^sigma)_G compared with the number of summands. Throws
 * PreconditionError unless p divides the order of sigma D_i for every i. */
Prop4Result prop4_counting_check(std::vector<Subgroup> const& ds, ElemId sigma, std::uint64_t p);

struct RandomSuiteOptions {
    std::size_t trials = 100;
    std::size_t max_group_order = 200;
    std::size_t max_index_sum = 240;  // prop4 only
    std::size_t max_summands = 3;     // prop4 only
    unsigned jobs = 1;
};

// Seeded random instances on abelian groups; instance i uses derive_seed(seed, i).
SuiteReport run_lemma1_suite(std::uint64_t seed, RandomSuiteOptions const& options = {});
SuiteReport run_prop4_suite(std::uint64_t seed, RandomSuiteOptions const& options = {});

}  // namespace aeq

#endif  // AEQ_MODLAB_HPP_
