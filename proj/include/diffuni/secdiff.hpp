#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "diffuni/poly.hpp"

namespace diffuni {

// Maximizing (direction(s), value) cell. For first-order reports alpha_prime
// is unused and stays 0.
struct Witness {
    std::uint64_t alpha = 0;
    std::uint64_t alpha_prime = 0;
    std::uint64_t beta = 0;
};

struct UniformityReport {
    int order = 2;
    std::uint64_t value = 0;
    Witness witness; // lexicographically smallest maximizer (alpha, alpha_prime, beta)
    // True when some direction pair makes the second difference a constant
    // polynomial (zero included), which forces value == field order. For
    // first-order reports: some single direction gives a constant difference.
    bool degenerate = false;
    // (solution count, number of cells with that count), descending by count,
    // at most 32 entries, zero-count cells not included. Filled by delta only;
    // the pruned second-order search leaves it empty.
    std::vector<std::pair<std::uint64_t, std::uint64_t>> histogram_summary;
};

// Number of x with f(x + alpha) + f(x) == beta.
std::uint64_t solution_count(const Poly& f, std::uint64_t alpha, std::uint64_t beta);

// Number of x where the second difference along the pair equals beta.
std::uint64_t solution_count(const Poly& f, const DerivativePair& p, std::uint64_t beta);

// Max solution count over beta for one pair, with the smallest such beta.
// One histogram pass over the field.
std::pair<std::uint64_t, std::uint64_t> delta2_for_pair(const Poly& f, const DerivativePair& p);

// First-order differential uniformity: max over nonzero alpha and all beta.
UniformityReport delta(const Poly& f, int threads = 1);

// Second-order differential uniformity: max over unordered pairs of distinct
// nonzero directions and all beta. Prunes pairs whose second difference has
// too small a degree to beat the current best; results (value, witness,
// degenerate) are identical to the exhaustive scan for every thread count.
UniformityReport delta2(const Poly& f, int threads = 1);

// Same quantity with no pruning; every pair is histogrammed. Intended for
// cross-checking at small field sizes.
UniformityReport delta2_exhaustive(const Poly& f, int threads = 1);

// Second-order uniformity of x^e over the degree-n default field, using the
// scaling reduction to pairs (1, alpha). Agrees with delta2 on the monomial,
// witness included. Requires e < 2^n.
UniformityReport delta2_monomial(std::uint64_t e, int n, int threads = 1);

} // namespace diffuni
