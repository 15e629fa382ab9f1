#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "meandim/subshift.hpp"

namespace meandim {

/// Raised when an assignment admits no admissible completion.
class WitnessBlocked : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A point visiting U_{zeta(g)} at every g in J: the symbol at g is the one the
/// chosen cylinder fixes. zeta is aligned with J in sorted element order.
/// Throws WitnessBlocked naming the obstruction if no completion exists.
Configuration realize_witness(const SubshiftSpec& spec, const std::vector<Element>& j_sorted,
                              const std::vector<Symbol>& zeta, const Cylinder& u0, const Cylinder& u1);

struct IndependenceBudget {
    // A J needing more than this many assignment checks stays uncertified.
    std::uint64_t certification_cap = 1ull << 16;
    // Total realizability checks the subset search may spend before
    // falling back to the greedy construction.
    std::uint64_t search_checks = 1ull << 22;
};

struct IndependenceResult {
    std::vector<Element> j;   // sorted
    Rational delta;           // |J| / |F_n|
    bool certified = false;   // every assignment verified realizable
    bool exhaustive = false;  // |J| is the maximum over all subsets of F_n
    std::uint64_t checks_used = 0;
    // One realizing configuration per assignment (code = bits of zeta,
    // first element of J most significant); filled when certified and small.
    std::vector<Configuration> certificates;
};

/// Largest J subseteq F_n with every zeta: J -> {0,1} realizable.
/// Exhaustive (descending subset size, lexicographic) while the budget lasts,
/// then greedy growth; the returned J is always fully certified.
IndependenceResult find_independence_set(const SubshiftSpec& spec, const Cylinder& u0,
                                         const Cylinder& u1, const FiniteSubset& f_n,
                                         const IndependenceBudget& budget = {});

/// Per-n witness record as emitted by the CLI.
struct WitnessRecord {
    std::size_t n = 0;
    std::size_t f_size = 0;
    std::size_t j_size = 0;
    Rational delta;
    bool certified = false;
};

/// Cylinders, per-n records and the declared density of a witness family.
struct IndependenceWitness {
    Cylinder u0{0}, u1{1};
    std::vector<WitnessRecord> records;
    Rational declared_delta() const;  // running minimum of the deltas
};

}  // namespace meandim
