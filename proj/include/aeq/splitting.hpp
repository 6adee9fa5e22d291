#ifndef AEQ_SPLITTING_HPP_
#define AEQ_SPLITTING_HPP_

// Prime-by-prime splitting census of number fields given by monic defining
// polynomials, and the pairwise comparator built on it. A finite scan can
// only refute arithmetic equivalence or accumulate evidence for it, so the
// strongest positive verdict is "equivalent-consistent".

#include "aeq/errors.hpp"
#include "aeq/ffpoly.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace aeq {

class ReducibleError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

// How irreducibility over Q was established.
struct IrreducibilityEvidence {
    std::optional<unsigned long> witness_prime;  // f irreducible mod this unramified prime
    bool assumed = false;                        // user override, no certificate
    bool certified() const { return witness_prime.has_value(); }
    std::string describe() const;
};

class NumberFieldSpec {
public:
    /* Validates a monic defining polynomial of degree >= 1. Irreducibility is
     * certified by finding, among the first 200 primes, an l not dividing
     * disc(f) with f irreducible mod l; if none is found the constructor
     * throws unless `assume_irreducible` is set. A vanishing discriminant
     * (repeated factor) always throws ReducibleError. */
    NumberFieldSpec(IntPoly poly, std::string label, bool assume_irreducible = false);

    IntPoly const& poly() const noexcept { return poly_; }
    std::string const& label() const noexcept { return label_; }
    unsigned degree() const noexcept { return static_cast<unsigned>(poly_.degree()); }
    // disc(f); 1 for degree-1 fields.
    BigInt const& discriminant() const noexcept { return disc_; }
    IrreducibilityEvidence const& irreducibility() const noexcept { return evidence_; }

private:
    IntPoly poly_;
    std::string label_;
    BigInt disc_;
    IrreducibilityEvidence evidence_;
};

struct SplittingRecord {
    unsigned long prime;
    std::vector<DegreeMult> pattern;
    unsigned g;
    bool ramified;  // prime divides disc(f)

    friend bool operator==(SplittingRecord const&, SplittingRecord const&) = default;
};

std::vector<unsigned long> primes_up_to(unsigned long n);

/* One record per prime <= max_prime in increasing order. With jobs > 1 the
 * prime list is partitioned across threads; each prime draws its own seed
 * from (seed, prime), so the output does not depend on the partition. */
std::vector<SplittingRecord> scan_field(NumberFieldSpec const& field, unsigned long max_prime, std::uint64_t seed,
                                        unsigned jobs = 1);

enum class Verdict { EquivalentConsistent, NotEquivalent, Inconclusive };

std::string to_string(Verdict v);
Verdict parse_verdict(std::string const& text);

struct ExcludedPrime {
    unsigned long prime;
    std::string reason;
    friend bool operator==(ExcludedPrime const&, ExcludedPrime const&) = default;
};

struct ComparisonRow {
    unsigned long prime;
    std::vector<DegreeMult> pattern_a;
    std::vector<DegreeMult> pattern_b;
    unsigned g_a;
    unsigned g_b;
    bool agree() const { return pattern_a == pattern_b; }
};

struct ComparatorReport {
    std::string field_a;
    std::string field_b;
    unsigned long max_prime = 0;
    std::uint64_t seed = 0;
    unsigned long min_prime_bound = 0;
    std::vector<ExcludedPrime> excluded;
    std::vector<unsigned long> g_disagreements;
    std::vector<unsigned long> pattern_disagreements;
    unsigned long scanned = 0;
    // g-agreements over scanned primes, reduced.
    BigInt agreement_num = 0;
    BigInt agreement_den = 1;
    Verdict verdict = Verdict::Inconclusive;
    std::string irreducibility_a;
    std::string irreducibility_b;
    // Per scanned prime; not carried by the JSON form.
    std::vector<ComparisonRow> rows;

    double g_disagreement_density() const;
};

struct CompareOptions {
    // A consistency verdict needs every unramified prime up to this bound scanned.
    unsigned long min_prime_bound = 10000;
    unsigned jobs = 1;
};

ComparatorReport compare_fields(NumberFieldSpec const& a, NumberFieldSpec const& b, unsigned long max_prime,
                                std::uint64_t seed, CompareOptions const& options = {});

enum class ReportFormat { Json, Csv };

std::string export_report(ComparatorReport const& report, ReportFormat format);
// Inverse of the JSON export (rows are not restored).
ComparatorReport import_report(std::string const& json_text);

}  // namespace aeq

#endif  // AEQ_SPLITTING_HPP_
