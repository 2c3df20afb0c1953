#include "diffuni/morse.hpp"

#include <vector>

#include "diffuni/lmap.hpp"
#include "diffuni/parallel.hpp"
#include "diffuni/rng.hpp"

namespace diffuni {

namespace {

// Characteristic polynomial of a k x k matrix over the field, via reduction
// to upper Hessenberg form by similarity transforms and the standard
// recurrence on leading principal blocks. Exact in O(k^3) field operations.
std::vector<std::uint64_t> matrix_charpoly(const Field& F,
                                           std::vector<std::vector<std::uint64_t>> M) {
    const int k = static_cast<int>(M.size());
    auto at = [&M](int i, int j) -> std::uint64_t& {
        return M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    };

    for (int col = 0; col + 2 < k; ++col) {
        int piv = -1;
        for (int i = col + 1; i < k; ++i) {
            if (at(i, col) != 0) {
                piv = i;
                break;
            }
        }
        if (piv < 0) continue;
        if (piv != col + 1) {
            std::swap(M[static_cast<std::size_t>(piv)], M[static_cast<std::size_t>(col + 1)]);
            for (int i = 0; i < k; ++i) std::swap(at(i, piv), at(i, col + 1));
        }
        std::uint64_t inv = F.inv(at(col + 1, col));
        for (int i = col + 2; i < k; ++i) {
            std::uint64_t factor = F.mul(at(i, col), inv);
            if (factor == 0) continue;
            for (int j = 0; j < k; ++j) at(i, j) ^= F.mul(factor, at(col + 1, j));
            // Inverse column operation keeps the similarity class.
            for (int j = 0; j < k; ++j) at(j, col + 1) ^= F.mul(factor, at(j, i));
        }
    }

    // P[i] = char poly of the leading i x i block, coefficients ascending.
    std::vector<std::vector<std::uint64_t>> P(static_cast<std::size_t>(k) + 1);
    P[0] = {1};
    for (int mi = 1; mi <= k; ++mi) {
        const auto& prev = P[static_cast<std::size_t>(mi - 1)];
        std::vector<std::uint64_t> cur(prev.size() + 1, 0);
        std::uint64_t diag = at(mi - 1, mi - 1);
        for (std::size_t t = 0; t < prev.size(); ++t) {
            cur[t + 1] ^= prev[t];
            cur[t] ^= F.mul(diag, prev[t]);
        }
        std::uint64_t sub = 1;
        for (int i = mi - 1; i >= 1; --i) {
            sub = F.mul(sub, at(i, i - 1));
            if (sub == 0) break;
            std::uint64_t h = F.mul(at(i - 1, mi - 1), sub);
            if (h == 0) continue;
            const auto& pi = P[static_cast<std::size_t>(i - 1)];
            for (std::size_t t = 0; t < pi.size(); ++t) cur[t] ^= F.mul(h, pi[t]);
        }
        P[static_cast<std::size_t>(mi)] = std::move(cur);
    }
    return P[static_cast<std::size_t>(k)];
}

} // namespace

Poly critical_value_poly(const Poly& g) {
    const FieldPtr& field = g.field();
    const Field& F = *field;
    Poly g1 = hasse_derivative(g, 1);
    if (g1.is_zero()) throw InvalidArgument("the derivative vanishes identically");
    Poly r = poly_radical(g1);
    int k = r.degree();
    if (k == 0) return poly_constant(field, 1); // no critical points

    // Multiplication-by-g matrix on the basis 1, x, ..., x^(k-1) of
    // F_q[x]/(r). Column j holds (x^j * g) mod r. Since r is squarefree the
    // quotient splits into field factors over the closure, making the
    // characteristic polynomial the product of (y + g(critical point)).
    Poly col = poly_divmod(g, r).second;
    std::vector<std::vector<std::uint64_t>> M(static_cast<std::size_t>(k),
                                              std::vector<std::uint64_t>(static_cast<std::size_t>(k), 0));
    for (int j = 0; j < k; ++j) {
        for (int i = 0; i < k; ++i)
            M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = col.coeff(i);
        if (j + 1 < k) {
            std::vector<std::uint64_t> shifted(col.coeffs().size() + 1, 0);
            for (std::size_t t = 0; t < col.coeffs().size(); ++t) shifted[t + 1] = col.coeffs()[t];
            col = poly_divmod(Poly(field, std::move(shifted)), r).second;
        }
    }
    return Poly(field, matrix_charpoly(F, std::move(M)));
}

MorseVerdict is_morse(const Poly& g) {
    if (g.degree() <= 0) throw InvalidArgument("Morse test needs a nonconstant polynomial");

    if (g.degree() % 2 == 0)
        return {false, 'C', "degree " + std::to_string(g.degree()) + " is even"};

    Poly g1 = hasse_derivative(g, 1);
    Poly g2 = hasse_derivative(g, 2);
    std::uint64_t res;
    if (g1.is_zero() && g2.is_zero()) {
        res = 0;
    } else {
        res = resultant(g1, g2);
    }
    if (res == 0)
        return {false, 'A', "the first two Hasse derivatives share a root in the closure"};

    // Odd degree makes g1 nonzero here.
    Poly rad = poly_radical(g1);
    if (rad.degree() >= 1) {
        Poly cv = critical_value_poly(g);
        if (!is_squarefree(cv))
            return {false, 'B', "two critical points share a critical value"};
    }
    return {true, 0, ""};
}

NonMorseStats nonmorse_fraction(const FieldPtr& field, int m, const DerivativePair& p,
                                std::uint64_t samples, std::uint64_t seed, int threads) {
    delta0_of_m(m); // validates m >= 7 and the residue class
    const Field& F = *field;
    const std::uint64_t mask = F.order() - 1;
    const int d = d_of_m(m);

    NonMorseStats stats;
    stats.m = m;
    stats.n = F.n();
    stats.samples = samples;
    stats.seed = seed;

    int nthreads = threads < 1 ? 1 : threads;
    std::vector<std::uint64_t> nonmorse(static_cast<std::size_t>(nthreads), 0);
    std::vector<std::uint64_t> drops(static_cast<std::size_t>(nthreads), 0);

    parallel_slices(samples, nthreads, [&](int w, std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t i = lo; i < hi; ++i) {
            SplitMix64 rng = sample_stream(seed, i);
            std::vector<std::uint64_t> coeffs(static_cast<std::size_t>(m) + 1);
            for (auto& c : coeffs) c = rng.next() & mask;
            Poly f(field, std::move(coeffs));
            LResult r = compute_L(f, p);
            if (r.g.degree() != d) {
                ++drops[static_cast<std::size_t>(w)];
            } else if (!is_morse(r.g).morse) {
                ++nonmorse[static_cast<std::size_t>(w)];
            }
        }
    });

    for (auto v : nonmorse) stats.nonmorse += v;
    for (auto v : drops) stats.degree_drop += v;
    return stats;
}

} // namespace diffuni
