#ifndef AEQ_GASSMANN_HPP_
#define AEQ_GASSMANN_HPP_

// Gassmann equivalence of subgroups, integral isomorphisms of permutation
// modules Z/p^k[G/H1] -> Z/p^k[G/H2], and the induced transport map between
// coinvariant modules M_H1 -> M_H2.

#include "aeq/groupcore.hpp"
#include "aeq/modlab.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace aeq {

struct PermCharacter {
    GroupPtr group;
    std::vector<std::vector<ElemId>> classes;  // as from conjugacy_classes()
    std::vector<std::uint64_t> values;         // fixed cosets of each class
};

PermCharacter perm_character(CosetSpace const& cs);

struct GassmannReport {
    bool equivalent;               // equal characters (the decision)
    bool intersections_equal;      // |C n H1| = |C n H2| for every class
    std::vector<std::uint64_t> intersections_1;
    std::vector<std::uint64_t> intersections_2;
    PermCharacter character_1;
    PermCharacter character_2;
};

// Throws InputError if the subgroups live in different groups.
GassmannReport gassmann_report(Subgroup const& h1, Subgroup const& h2);
bool gassmann_equivalent(Subgroup const& h1, Subgroup const& h2);

// First g in canonical order with g H1 g^-1 = H2.
std::optional<ElemId> find_conjugator(Subgroup const& h1, Subgroup const& h2);
bool are_conjugate(Subgroup const& h1, Subgroup const& h2);

struct TransportCertificate {
    std::string group_label;
    GroupPtr group;
    std::vector<ElemId> h1_generators;
    std::vector<ElemId> h2_generators;
    std::uint64_t p = 0;
    unsigned precision = 0;
    Matrix phi;  // [G:H2] x [G:H1]; column c is the image of the coset c of H1
    // Nonzero coefficients of alpha, keyed by element index, increasing.
    std::vector<std::pair<ElemId, std::uint64_t>> alpha;
    std::uint64_t seed = 0;
    bool determinant_unit = false;
    bool equivariance_checked = false;
    std::size_t hom_rank = 0;  // minimal generator count of the commuting space
    unsigned attempts = 0;     // random draws used (0 for a relabeling)

    Subgroup h1() const { return Subgroup::generated_by(group, h1_generators); }
    Subgroup h2() const { return Subgroup::generated_by(group, h2_generators); }
};

inline constexpr unsigned kIsoRetryBound = 200;

/* Generators of {Phi : Phi P1(g) = P2(g) Phi for all generators g} over
 * Z/p^k, where P_i is the permutation action on G/H_i. */
SubquotientBasis commuting_space(CosetSpace const& cs1, CosetSpace const& cs2, CoeffRing const& ring);

/* Tries a relabeling xH1 -> x g^-1 H2 when H2 = g H1 g^-1, then draws random
 * elements of the commuting space until one is invertible mod p. Throws
 * PreconditionError if p divides |G| or the characters differ, and
 * RetryExhausted after kIsoRetryBound draws. */
TransportCertificate construct_iso(Subgroup const& h1, Subgroup const& h2, std::uint64_t p, unsigned precision,
                                   std::uint64_t seed, std::string const& group_label = "");

struct VerificationResult {
    bool ok;
    std::vector<std::string> reasons;
};

// Re-checks commutation with every group element, invertibility mod p and
// alpha against the columns of phi.
VerificationResult verify_certificate(TransportCertificate const& cert);

TransportCertificate reduce_precision(TransportCertificate const& cert, unsigned precision);
// Certificate for H2 -> H1 built from phi^-1.
TransportCertificate invert_certificate(TransportCertificate const& cert);

std::string certificate_to_json(TransportCertificate const& cert);
// Rebuilds the group from the recorded degree and generators.
TransportCertificate certificate_from_json(std::string const& text);

struct TransportResult {
    Matrix map;  // M_H1 component coordinates -> M_H2 component coordinates
    std::vector<unsigned> exponents_1;
    std::vector<unsigned> exponents_2;
    bool is_iso;
    bool equivariant;
};

/* M is a module over product.group = G x A with G = cert.group. Computes
 * M_H1 and M_H2 with the induced A-action and the map x -> alpha* x, where
 * alpha* = sum c_g g^-1. Throws PreconditionError if the G- and A-actions do
 * not commute, the certificate does not verify, or the map is not well
 * defined on the quotients. */
TransportResult transport_coinvariants(GModule const& m, DirectProduct const& product, TransportCertificate const& cert);

}  // namespace aeq

#endif  // AEQ_GASSMANN_HPP_
