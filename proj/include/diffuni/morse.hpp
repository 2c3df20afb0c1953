#pragma once

#include <cstdint>
#include <string>

#include "diffuni/poly.hpp"

namespace diffuni {

struct MorseVerdict {
    bool morse = false;
    // First failed condition in check order 'C', 'A', 'B'; 0 when Morse.
    char failed_condition = 0;
    std::string details;
};

// Morse test for a nonconstant g over a binary field, three conditions
// checked in order:
//   C: deg g is odd (so the point at infinity is not a branch point);
//   A: the first and second Hasse derivatives share no root in the closure
//      (no degenerate critical point), tested by a resultant;
//   B: the critical values are pairwise distinct, tested by squarefreeness
//      of the critical value polynomial.
// A vanishing derivative counts as failing A unless the other derivative is
// a nonzero constant. Constant or zero g throws InvalidArgument.
MorseVerdict is_morse(const Poly& g);

// Characteristic polynomial (variable y) of multiplication by g on
// F_q[x]/(r), r = radical of the first Hasse derivative: monic of degree
// deg r, with the critical values of g as roots, each counted once per
// critical point. Throws InvalidArgument when the derivative is identically
// zero.
Poly critical_value_poly(const Poly& g);

struct NonMorseStats {
    int m = 0;
    int n = 0;
    std::uint64_t samples = 0;
    std::uint64_t nonmorse = 0;    // quotient of generic degree but not Morse
    std::uint64_t degree_drop = 0; // quotient degree below d_of_m(m)
    std::uint64_t seed = 0;
};

// Draws `samples` uniform polynomials of degree <= m (all m+1 coefficients
// uniform, sample i read from sample_stream(seed, i), x^j coefficient at step
// j) and classifies the quartic-composition quotient of each. The reported
// fraction downstream is (nonmorse + degree_drop) / samples: every sample
// whose quotient is not Morse of the generic degree. Requires m >= 7 with
// m mod 8 in {0, 1, 2, 7}.
NonMorseStats nonmorse_fraction(const FieldPtr& field, int m, const DerivativePair& p,
                                std::uint64_t samples, std::uint64_t seed, int threads = 1);

} // namespace diffuni
