#pragma once

#include <cstdint>
#include <optional>

#include "diffuni/poly.hpp"

namespace diffuni {

// Generic degree of the quotient g with g(T) = second difference, for inputs
// of degree m >= 7: (m-4)/4, (m-5)/4, (m-6)/4, (m-3)/4 as m mod 4 is
// 0, 1, 2, 3. Smaller m throws InvalidArgument.
int d_of_m(int m);

// 4 * d_of_m(m), defined exactly when the top coefficient of the quotient is
// generically nonzero: m mod 8 in {0, 1, 2, 7}. Other residues throw
// UnsupportedResidue; m < 7 throws InvalidArgument.
int delta0_of_m(int m);

struct LResult {
    Poly g; // unique g with g(T_p) = second difference of f along p
    // Present exactly when deg g reaches the degree bound: d_of_m(m) for
    // deg f = m >= 7, floor(deg(second difference) / 4) for smaller nonzero
    // cases. b0 is then the leading coefficient of g and b1_over_b0 the ratio
    // of the next coefficient to it (0 when the bound is 0).
    std::optional<std::uint64_t> b0;
    std::optional<std::uint64_t> b1_over_b0;
};

// Solves g(T_p) = D2 f by peeling the top coefficient against powers of the
// monic quartic T_p. The second difference is invariant under translation by
// the span of the pair, so its degree is a multiple of 4 and the system is
// consistent; a violation would be a bug and raises
// InternalInvariantViolation.
LResult compute_L(const Poly& f, const DerivativePair& p);

// Closed form for b1_over_b0 straight from the top eight coefficients of f,
// split into eight rows by m mod 16. Throws DegreeDrop when the dividing
// coefficient of f vanishes (the closed form needs the generic leading term),
// UnsupportedResidue for m mod 8 outside {0, 1, 2, 7}, InvalidArgument for
// m < 7.
std::uint64_t b1_over_b0_formula(const Poly& f, const DerivativePair& p);

// For f in the kernel of the alpha-difference, the unique h with
// h(x^2 + alpha x) = f. A nonzero difference throws InvalidArgument.
Poly kernel_witness(const Poly& f, std::uint64_t alpha);

// For f killed by both differences of the pair, the unique h with
// h(T_p) = f.
Poly double_kernel_witness(const Poly& f, const DerivativePair& p);

// Surjectivity of f -> L(f) from polynomials of degree <= m onto those of
// degree <= d_of_m(m): ranks the monomial images over the field.
bool rank_check_L(int m, const DerivativePair& p, const FieldPtr& field);

} // namespace diffuni
