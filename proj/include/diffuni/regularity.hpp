#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "diffuni/poly.hpp"

namespace diffuni {

// (theta1, theta2) = (alpha^2 + alpha*alpha', alpha'^2 + alpha*alpha'),
// computed on the canonical (swapped-if-needed) pair. Both components are
// nonzero and distinct for a valid pair.
std::pair<std::uint64_t, std::uint64_t> theta(const Field& f, const DerivativePair& p);

// Membership of c in the image of T_p: the image is the intersection of the
// two trace hyperplanes ker Tr(x / theta1^2) and ker Tr(x / theta2^2), a
// subspace of index 4.
bool in_image_T(const Field& f, const DerivativePair& p, std::uint64_t c);

// All x with T_p(x) = c, ascending by bit pattern: 4 solutions when c is in
// the image, none otherwise. Peels the two quadratic layers of T.
std::vector<std::uint64_t> solve_T(const Field& f, const DerivativePair& p, std::uint64_t c);

// Exhaustive check that the images of T over all pairs, collected as element
// sets, are exactly the (q-1)(q/2-1)/3 subspaces of index 4 with no
// repetition. Limited to n <= 8 by cost.
bool representation_check(int n);

// The leading-coefficient hypothesis for f along p: the quotient g = L(f)
// reaches its generic degree and b1/b0 lies in the image of T_p. Requires
// deg f >= 7 with a residue where delta0 is defined.
bool regular_hypothesis_holds(const Poly& f, const DerivativePair& p);

struct CoveringFamily {
    std::vector<DerivativePair> pairs;
    int k = 0; // number of pairs
};

// Builds k = min{ k : (3/4)^k < eps } pairs whose images of T are cut out by
// disjoint coordinate pairs of the dual basis, so the union of images covers
// all but a (3/4)^k fraction of the field. Throws InsufficientDegree when
// n < 2k and InvalidArgument for eps outside (0, 1] or numerator/denominator
// above 2^32.
CoveringFamily build_covering_family(const FieldPtr& field, std::uint64_t eps_num,
                                     std::uint64_t eps_den);

} // namespace diffuni
