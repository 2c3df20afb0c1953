#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "diffuni/poly.hpp"

namespace diffuni {

struct DensityStats {
    int m = 0;
    int n = 0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::uint64_t hits = 0;       // second-order uniformity exactly delta0_of_m(m)
    std::uint64_t degenerate = 0; // some pair had a constant second difference
    // misses = samples - hits - degenerate
};

// Samples polynomials of degree exactly m over the default degree-n field and
// counts how often the second-order uniformity equals the generic value
// delta0_of_m(m). Sample i draws from sample_stream(seed, i): the x^j
// coefficient for j < m is the low n bits of draw j, the leading coefficient
// is 1 + (draw m mod (2^n - 1)). Requires the residues where delta0 is
// defined.
DensityStats density_experiment(int m, int n, std::uint64_t samples, std::uint64_t seed,
                                int threads = 1);

// Second-order uniformity of the patched inversion map x^(2^n - 2) for each
// n in [n_min, n_max], as (n, value) rows.
std::vector<std::pair<int, std::uint64_t>> inversion_delta2_table(int n_min, int n_max,
                                                                  int threads = 1);

struct SplittingResult {
    bool found = false;
    std::uint64_t beta = 0;
    std::string reason; // "constant" when the second difference is constant
};

// Smallest beta for which the second difference along p attains beta at
// exactly deg(second difference) points, i.e. splits with distinct roots.
SplittingResult find_splitting_beta(const Poly& f, const DerivativePair& p);

struct ChebotarevInput {
    std::uint64_t q = 0;    // size of the constant field
    std::uint64_t d_k = 1;  // degree bound data of the base function field
    std::uint64_t d_lk = 1; // degree of the splitting extension
    std::uint64_t g_k = 0;  // genus of the base
    std::uint64_t g_l = 0;  // genus of the extension
    std::uint64_t s = 0;    // size of the conjugation-stable class
};

// Exact rational, reduced, positive denominator.
struct Rational {
    __int128 num = 0;
    __int128 den = 1;
};

Rational make_rational(__int128 num, __int128 den);
bool rational_positive(const Rational& r);
std::string rational_to_string(const Rational& r); // "p/q", or "p" when q == 1

// Effective Chebotarev count lower bound:
//   (s/d_lk) * q - (2s/d_lk) * ((d_lk + g_l) ceil(sqrt(q))
//                               + d_lk (2 g_k + 1) ceil(q^(1/4)) + g_l + d_k d_lk).
// All ceilings on integer roots are exact. Inputs other than q must fit in
// 32 bits; s <= d_lk and d_lk >= 1 are required.
Rational chebotarev_lower_bound(const ChebotarevInput& in);

// Smallest n >= 1 with a positive bound at q = 2^n, scanning n up to 62;
// returns 0 when none qualifies.
int chebotarev_threshold_n(const ChebotarevInput& shape);

std::uint64_t ceil_sqrt(std::uint64_t v);
std::uint64_t ceil_root4(std::uint64_t v);

struct CurveCounts {
    std::uint64_t count_d = 0;          // affine points of the plane quartic model
    std::uint64_t count_sols = 0;       // alpha outside {0,1} passing both trace conditions
    std::uint64_t count_c = 0;          // space curve points, via the inverse map off the
                                        // excluded locus, each verified on both surfaces
    std::uint64_t count_projective = 0; // plane model plus its points at infinity
};

// Point counts of the intersection curve (y^2+y)(x^2+x+1) = 1,
// (z^2+z)(x^2+x+1) = x^2 and its plane quartic model
// (y^2+y)^2 + (y^2+y)(z^2+z) + (z^2+z+1)^2 = 0 over the default degree-n
// field. The two degree-2 points at infinity of the plane model are rational
// exactly when n is even.
CurveCounts curve_point_counts(int n);

// For every alpha outside {0,1} and every x off the four translates
// {0, 1, alpha, alpha+1}: the four-term inversion sum equals beta exactly
// when beta * T_{(1,alpha)}(x) = alpha^2 + alpha. Checked exhaustively.
bool reduced_equation_check(int n);

} // namespace diffuni
