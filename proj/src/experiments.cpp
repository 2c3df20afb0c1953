#include "diffuni/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "diffuni/lmap.hpp"
#include "diffuni/parallel.hpp"
#include "diffuni/rng.hpp"
#include "diffuni/secdiff.hpp"

namespace diffuni {

DensityStats density_experiment(int m, int n, std::uint64_t samples, std::uint64_t seed,
                                int threads) {
    const int target = delta0_of_m(m); // validates m and its residue
    auto field = make_field(n);
    const std::uint64_t q = field->order();
    const std::uint64_t mask = q - 1;

    DensityStats stats;
    stats.m = m;
    stats.n = n;
    stats.samples = samples;
    stats.seed = seed;

    int nthreads = threads < 1 ? 1 : threads;
    std::vector<std::uint64_t> hits(static_cast<std::size_t>(nthreads), 0);
    std::vector<std::uint64_t> degen(static_cast<std::size_t>(nthreads), 0);

    parallel_slices(samples, nthreads, [&](int w, std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t i = lo; i < hi; ++i) {
            SplitMix64 rng = sample_stream(seed, i);
            std::vector<std::uint64_t> coeffs(static_cast<std::size_t>(m) + 1);
            for (int j = 0; j < m; ++j) coeffs[static_cast<std::size_t>(j)] = rng.next() & mask;
            coeffs[static_cast<std::size_t>(m)] = 1 + (rng.next() % (q - 1));
            UniformityReport rep = delta2(Poly(field, std::move(coeffs)), 1);
            if (rep.degenerate) {
                ++degen[static_cast<std::size_t>(w)];
            } else if (rep.value == static_cast<std::uint64_t>(target)) {
                ++hits[static_cast<std::size_t>(w)];
            }
        }
    });

    for (auto v : hits) stats.hits += v;
    for (auto v : degen) stats.degenerate += v;
    return stats;
}

std::vector<std::pair<int, std::uint64_t>> inversion_delta2_table(int n_min, int n_max,
                                                                  int threads) {
    if (n_min < 2 || n_max > 24 || n_min > n_max)
        throw InvalidArgument("need 2 <= n_min <= n_max <= 24");
    std::vector<std::pair<int, std::uint64_t>> rows;
    for (int n = n_min; n <= n_max; ++n) {
        std::uint64_t e = (std::uint64_t(1) << n) - 2;
        rows.emplace_back(n, delta2_monomial(e, n, threads).value);
    }
    return rows;
}

SplittingResult find_splitting_beta(const Poly& f, const DerivativePair& p) {
    Poly d2 = second_derivative(f, p);
    if (d2.degree() <= 0) return {false, 0, "constant"};
    const std::uint64_t q = f.field()->order();
    const auto deg = static_cast<std::uint64_t>(d2.degree());
    std::vector<std::uint32_t> hist(q, 0);
    for (std::uint64_t x = 0; x < q; ++x) ++hist[poly_eval(d2, x)];
    for (std::uint64_t b = 0; b < q; ++b) {
        // deg distinct roots means the fiber is as large as the degree
        // allows, so every root is simple.
        if (hist[b] == deg) return {true, b, ""};
    }
    return {false, 0, "no fully split value"};
}

namespace {

std::uint64_t floor_sqrt(std::uint64_t v) {
    if (v == 0) return 0;
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(v)));
    while (r > 0 && r > v / r) --r;
    while ((r + 1) <= v / (r + 1)) ++r;
    return r;
}

__int128 igcd(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

} // namespace

std::uint64_t ceil_sqrt(std::uint64_t v) {
    std::uint64_t r = floor_sqrt(v);
    return r * r == v ? r : r + 1;
}

std::uint64_t ceil_root4(std::uint64_t v) {
    std::uint64_t r = floor_sqrt(floor_sqrt(v));
    return r * r * r * r == v ? r : r + 1;
}

Rational make_rational(__int128 num, __int128 den) {
    if (den == 0) throw InvalidArgument("zero denominator");
    if (den < 0) {
        den = -den;
        num = -num;
    }
    __int128 g = igcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return {num, den};
}

bool rational_positive(const Rational& r) { return r.num > 0; }

std::string rational_to_string(const Rational& r) {
    auto int_str = [](__int128 v) {
        if (v == 0) return std::string("0");
        bool neg = v < 0;
        unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
        std::string s;
        while (u) {
            s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
            u /= 10;
        }
        if (neg) s.push_back('-');
        std::reverse(s.begin(), s.end());
        return s;
    };
    if (r.den == 1) return int_str(r.num);
    return int_str(r.num) + "/" + int_str(r.den);
}

Rational chebotarev_lower_bound(const ChebotarevInput& in) {
    const std::uint64_t cap = std::uint64_t(1) << 32;
    if (in.d_lk == 0 || in.d_k == 0) throw InvalidArgument("degrees must be positive");
    if (in.q < 2) throw InvalidArgument("the constant field needs at least two elements");
    if (in.s > in.d_lk) throw InvalidArgument("class size cannot exceed the extension degree");
    if (in.d_k > cap || in.d_lk > cap || in.g_k > cap || in.g_l > cap || in.s > cap)
        throw InvalidArgument("inputs other than q must fit in 32 bits");

    const __int128 rt2 = static_cast<__int128>(ceil_sqrt(in.q));
    const __int128 rt4 = static_cast<__int128>(ceil_root4(in.q));
    const __int128 s = in.s, dlk = in.d_lk, dk = in.d_k, gk = in.g_k, gl = in.g_l;
    const __int128 penalty = (dlk + gl) * rt2 + dlk * (2 * gk + 1) * rt4 + gl + dk * dlk;
    const __int128 num = s * static_cast<__int128>(in.q) - 2 * s * penalty;
    return make_rational(num, dlk);
}

int chebotarev_threshold_n(const ChebotarevInput& shape) {
    for (int n = 1; n <= 62; ++n) {
        ChebotarevInput in = shape;
        in.q = std::uint64_t(1) << n;
        if (rational_positive(chebotarev_lower_bound(in))) return n;
    }
    return 0;
}

CurveCounts curve_point_counts(int n) {
    auto field = make_field(n);
    const Field& F = *field;
    const std::uint64_t q = F.order();
    CurveCounts out;

    for (std::uint64_t a = 0; a < q; ++a) {
        if (a == 0 || a == 1) continue;
        std::uint64_t x = F.sqr(a) ^ a ^ 1;
        if (x == 0) continue;
        std::uint64_t xi = F.inv(x);
        if (F.trace(xi) == 0 && F.trace(F.mul(F.sqr(a), xi)) == 0) ++out.count_sols;
    }

    for (std::uint64_t y = 0; y < q; ++y) {
        const std::uint64_t yy = F.sqr(y) ^ y;
        for (std::uint64_t z = 0; z < q; ++z) {
            const std::uint64_t zz = F.sqr(z) ^ z;
            if ((F.sqr(yy) ^ F.mul(yy, zz) ^ F.sqr(zz ^ 1)) != 0) continue;
            ++out.count_d;
            // Inverse of the projection to the (y, z) model, off the locus
            // where both case formulas are undefined.
            const std::uint64_t z1 = zz ^ 1;
            std::uint64_t x;
            if (yy != 0) {
                x = F.div(z1, yy) ^ 1;
            } else if (z1 != 0) {
                x = F.div(yy ^ 1, z1);
            } else {
                continue; // excluded locus
            }
            const std::uint64_t w = F.sqr(x) ^ x ^ 1;
            if (F.mul(yy, w) != 1 || F.mul(zz, w) != F.sqr(x))
                throw InternalInvariantViolation("inverse map left the space curve");
            ++out.count_c;
        }
    }
    out.count_projective = out.count_d + (n % 2 == 0 ? 2 : 0);
    return out;
}

bool reduced_equation_check(int n) {
    auto field = make_field(n);
    const Field& F = *field;
    const std::uint64_t q = F.order();
    // Patched inversion values x^(q-2).
    std::vector<std::uint64_t> inv(q);
    for (std::uint64_t x = 0; x < q; ++x) inv[x] = F.pow(x, q - 2);

    for (std::uint64_t a = 2; a < q; ++a) {
        const std::uint64_t rhs = F.sqr(a) ^ a; // alpha(alpha + 1)
        for (std::uint64_t x = 0; x < q; ++x) {
            if (x == 0 || x == 1 || x == a || x == (a ^ 1)) continue;
            const std::uint64_t beta = inv[x] ^ inv[x ^ a] ^ inv[x ^ 1] ^ inv[x ^ a ^ 1];
            const std::uint64_t t = F.mul(F.mul(x, x ^ a), F.mul(x ^ 1, x ^ a ^ 1));
            if (t == 0) return false; // roots of T are exactly the excluded points
            // One check settles both directions: T(x) != 0 makes beta unique
            // in beta * T(x) = alpha(alpha + 1).
            if (F.mul(beta, t) != rhs) return false;
        }
    }
    return true;
}

} // namespace diffuni
