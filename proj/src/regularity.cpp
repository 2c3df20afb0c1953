#include "diffuni/regularity.hpp"

#include <algorithm>
#include <set>

#include "diffuni/lmap.hpp"

namespace diffuni {

std::pair<std::uint64_t, std::uint64_t> theta(const Field& f, const DerivativePair& p) {
    if (p.alpha >= f.order() || p.alpha_prime >= f.order())
        throw InvalidArgument("direction bits exceed the field size");
    std::uint64_t prod = f.mul(p.alpha, p.alpha_prime);
    return {f.sqr(p.alpha) ^ prod, f.sqr(p.alpha_prime) ^ prod};
}

bool in_image_T(const Field& f, const DerivativePair& p, std::uint64_t c) {
    if (c >= f.order()) throw InvalidArgument("element bits exceed the field size");
    auto [t1, t2] = theta(f, p);
    return f.trace(f.div(c, f.sqr(t1))) == 0 && f.trace(f.div(c, f.sqr(t2))) == 0;
}

std::vector<std::uint64_t> solve_T(const Field& f, const DerivativePair& p, std::uint64_t c) {
    if (c >= f.order()) throw InvalidArgument("element bits exceed the field size");
    // T = S_gamma after S_alpha with gamma = alpha'^2 + alpha*alpha'.
    std::uint64_t gamma = f.sqr(p.alpha_prime) ^ f.mul(p.alpha, p.alpha_prime);
    std::vector<std::uint64_t> xs;
    for (std::uint64_t u : solve_artin_schreier(f, gamma, c))
        for (std::uint64_t x : solve_artin_schreier(f, p.alpha, u)) xs.push_back(x);
    std::sort(xs.begin(), xs.end());
    return xs;
}

bool representation_check(int n) {
    if (n > 8) throw InvalidArgument("exhaustive representation check is limited to n <= 8");
    auto field = make_field(n);
    const Field& F = *field;
    const std::uint64_t q = F.order();
    const std::size_t words = static_cast<std::size_t>((q + 63) / 64);

    std::set<std::vector<std::uint64_t>> images;
    for (std::uint64_t a = 1; a < q; ++a) {
        for (std::uint64_t ap = a + 1; ap < q; ++ap) {
            std::vector<std::uint64_t> image(words, 0);
            for (std::uint64_t x = 0; x < q; ++x) {
                std::uint64_t t =
                    F.mul(F.mul(x, x ^ a), F.mul(x ^ ap, x ^ a ^ ap));
                image[t >> 6] |= std::uint64_t(1) << (t & 63);
            }
            images.insert(std::move(image));
        }
    }
    const std::uint64_t expected = (q - 1) * (q / 2 - 1) / 3;
    return images.size() == expected;
}

bool regular_hypothesis_holds(const Poly& f, const DerivativePair& p) {
    delta0_of_m(f.degree()); // validates degree and residue
    LResult r = compute_L(f, p);
    if (!r.b0.has_value()) return false;
    return in_image_T(*f.field(), p, *r.b1_over_b0);
}

namespace {

// Inverse of the n x n F_2 Gram matrix rows[i] (bitmask rows), Gauss-Jordan.
std::vector<std::uint64_t> invert_f2(std::vector<std::uint64_t> rows, int n) {
    std::vector<std::uint64_t> inv(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) inv[static_cast<std::size_t>(i)] = std::uint64_t(1) << i;
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int i = col; i < n; ++i) {
            if ((rows[static_cast<std::size_t>(i)] >> col) & 1) {
                piv = i;
                break;
            }
        }
        if (piv < 0) throw InternalInvariantViolation("trace form is degenerate");
        std::swap(rows[static_cast<std::size_t>(col)], rows[static_cast<std::size_t>(piv)]);
        std::swap(inv[static_cast<std::size_t>(col)], inv[static_cast<std::size_t>(piv)]);
        for (int i = 0; i < n; ++i) {
            if (i == col) continue;
            if ((rows[static_cast<std::size_t>(i)] >> col) & 1) {
                rows[static_cast<std::size_t>(i)] ^= rows[static_cast<std::size_t>(col)];
                inv[static_cast<std::size_t>(i)] ^= inv[static_cast<std::size_t>(col)];
            }
        }
    }
    return inv;
}

} // namespace

CoveringFamily build_covering_family(const FieldPtr& field, std::uint64_t eps_num,
                                     std::uint64_t eps_den) {
    const Field& F = *field;
    const int n = F.n();
    if (eps_num == 0 || eps_den == 0 || eps_num > eps_den)
        throw InvalidArgument("epsilon must lie in (0, 1]");
    if (eps_num > (std::uint64_t(1) << 32) || eps_den > (std::uint64_t(1) << 32))
        throw InvalidArgument("epsilon numerator and denominator must fit in 32 bits");

    // Smallest k with (3/4)^k < eps, i.e. 3^k * den < 4^k * num.
    int k = 0;
    {
        unsigned __int128 p3 = 1, p4 = 1;
        for (k = 1; k <= 48; ++k) {
            p3 *= 3;
            p4 *= 4;
            if (p3 * eps_den < p4 * eps_num) break;
        }
        if (k > 48) throw InvalidArgument("epsilon is too small");
    }
    if (n < 2 * k)
        throw InsufficientDegree("need field degree at least " + std::to_string(2 * k) +
                                 " for " + std::to_string(k) + " coordinate pairs");

    // Dual basis of the power basis: Gram matrix G[i][j] = trace(x^(i+j)),
    // rows of its inverse are the dual elements' coordinates. Then
    // trace(mu_i * c) reads off bit i of c, so the image of the pair mapped
    // to (mu_{2t}, mu_{2t+1}) is the subspace with bits 2t, 2t+1 clear.
    std::vector<std::uint64_t> gram(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (F.trace(F.pow(2 /*x*/, static_cast<std::uint64_t>(i + j))))
                gram[static_cast<std::size_t>(i)] |= std::uint64_t(1) << j;
    std::vector<std::uint64_t> mu = invert_f2(std::move(gram), n);

    CoveringFamily fam;
    fam.k = k;
    for (int t = 0; t < k; ++t) {
        std::uint64_t theta1 = F.sqrt(F.inv(mu[static_cast<std::size_t>(2 * t)]));
        std::uint64_t theta2 = F.sqrt(F.inv(mu[static_cast<std::size_t>(2 * t + 1)]));
        // Recover (alpha, alpha') from theta1 = alpha(alpha + alpha') and
        // theta2 = alpha'(alpha + alpha'). Summing gives (alpha + alpha')^2,
        // which pins the pair uniquely: square roots are bijective here.
        std::uint64_t gamma = F.sqrt(theta1 ^ theta2);
        if (gamma == 0)
            throw InternalInvariantViolation("coincident theta values for a covering pair");
        std::uint64_t a = F.div(theta1, gamma);
        std::uint64_t ap = F.div(theta2, gamma);
        if (a == 0 || ap == 0 || a == ap ||
            (F.sqr(a) ^ F.mul(a, ap)) != theta1 || (F.sqr(ap) ^ F.mul(a, ap)) != theta2)
            throw InternalInvariantViolation("no pair maps onto the requested theta values");
        fam.pairs.push_back(make_derivative_pair(F, a, ap));
    }
    return fam;
}

} // namespace diffuni
