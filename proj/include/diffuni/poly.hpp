#pragma once

#include <climits>
#include <cstdint>
#include <utility>
#include <vector>

#include "diffuni/field.hpp"

namespace diffuni {

// Degree of the zero polynomial. A sentinel well below any real degree; never
// do arithmetic with it.
inline constexpr int kNegInfDegree = INT_MIN;

// Univariate polynomial over one binary field, coefficients stored lowest
// degree first and normalized so the last entry is nonzero. The zero
// polynomial has an empty coefficient vector.
class Poly {
  public:
    explicit Poly(FieldPtr field);
    Poly(FieldPtr field, std::vector<std::uint64_t> coeffs); // normalizes

    const FieldPtr& field() const { return field_; }
    const std::vector<std::uint64_t>& coeffs() const { return coeffs_; }

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const {
        return coeffs_.empty() ? kNegInfDegree : static_cast<int>(coeffs_.size()) - 1;
    }
    std::uint64_t coeff(int i) const {
        return (i < 0 || static_cast<std::size_t>(i) >= coeffs_.size())
                   ? 0
                   : coeffs_[static_cast<std::size_t>(i)];
    }
    std::uint64_t leading() const; // InvalidArgument on the zero polynomial

    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }

  private:
    void normalize();
    FieldPtr field_;
    std::vector<std::uint64_t> coeffs_;
};

Poly poly_zero(const FieldPtr& field);
Poly poly_constant(const FieldPtr& field, std::uint64_t c);
// c * x^e
Poly poly_monomial(const FieldPtr& field, std::uint64_t c, std::uint64_t e);

Poly poly_add(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, std::uint64_t c);
// (quotient, remainder); DivisionByZero when b is zero.
std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b);
Poly make_monic(const Poly& a); // InvalidArgument on zero

// Monic gcd; gcd(f, 0) is the monic multiple of f. Both inputs zero throws
// InvalidArgument.
Poly poly_gcd(const Poly& a, const Poly& b);

std::uint64_t poly_eval(const Poly& f, std::uint64_t x);
// All q evaluations of f, indexed by element bits.
std::vector<std::uint64_t> value_table(const Poly& f);

// f(x + c). In characteristic 2 the binomial coefficients reduce to bit tests.
Poly poly_shift(const Poly& f, std::uint64_t c);

// g(h(x)).
Poly poly_compose(const Poly& g, const Poly& h);

// r-th Hasse derivative: sum of binom(i, r) a_i x^(i-r).
Poly hasse_derivative(const Poly& f, int r);

// An unordered pair of distinct nonzero directions, stored with
// alpha < alpha_prime in bit order.
struct DerivativePair {
    std::uint64_t alpha;
    std::uint64_t alpha_prime;
};

// Validates: both nonzero, distinct, below the field order. Swaps into
// canonical order if needed.
DerivativePair make_derivative_pair(const Field& f, std::uint64_t alpha,
                                    std::uint64_t alpha_prime);

// First difference f(x + alpha) + f(x). alpha == 0 throws InvalidArgument.
Poly derivative(const Poly& f, std::uint64_t alpha);

// Second difference: both directions applied in turn. Symmetric in the pair.
Poly second_derivative(const Poly& f, const DerivativePair& p);

// Roots lying in the coefficient field, as (root, multiplicity) sorted by
// root bits. The zero polynomial is rejected.
std::vector<std::pair<std::uint64_t, int>> roots_in_field(const Poly& f);

// Squarefree over the algebraic closure. A vanishing first Hasse derivative
// of a positive-degree polynomial means a perfect square, hence false.
bool is_squarefree(const Poly& f);

// Monic product of the distinct irreducible factors.
Poly poly_radical(const Poly& f);

// Resultant via the Euclidean remainder chain. In characteristic 2 all the
// usual sign factors are trivial, leaving plain leading-coefficient powers.
// Both inputs zero throws InvalidArgument.
std::uint64_t resultant(const Poly& a, const Poly& b);

// S_gamma(X) = X^2 + gamma X, the additive square map shifted by gamma.
Poly s_poly(const FieldPtr& field, std::uint64_t gamma);

// T_p(X) = X^4 + (a^2 + a'^2 + a a') X^2 + (a^2 a' + a a'^2) X: the degree-4
// linearized map whose kernel is span{alpha, alpha_prime}. Composition
// identity: T_p = S_{gamma} of S_{alpha} with gamma = alpha_prime^2 +
// alpha*alpha_prime (up to the kernel ordering, verified in tests).
Poly t_poly(const FieldPtr& field, const DerivativePair& p);

} // namespace diffuni
