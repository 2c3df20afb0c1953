#include "diffuni/secdiff.hpp"

#include <algorithm>
#include <atomic>
#include <map>

#include "diffuni/parallel.hpp"

namespace diffuni {

namespace {

bool lex_before(std::uint64_t a1, std::uint64_t p1, std::uint64_t b1, std::uint64_t a2,
                std::uint64_t p2, std::uint64_t b2) {
    if (a1 != a2) return a1 < a2;
    if (p1 != p2) return p1 < p2;
    return b1 < b2;
}

struct Candidate {
    bool has = false;
    std::uint64_t count = 0;
    std::uint64_t alpha = 0, alpha_prime = 0, beta = 0;

    void offer(std::uint64_t c, std::uint64_t a, std::uint64_t p, std::uint64_t b) {
        if (!has || c > count ||
            (c == count && lex_before(a, p, b, alpha, alpha_prime, beta))) {
            has = true;
            count = c;
            alpha = a;
            alpha_prime = p;
            beta = b;
        }
    }

    void merge(const Candidate& o) {
        if (o.has) offer(o.count, o.alpha, o.alpha_prime, o.beta);
    }
};

// Max bucket and its smallest index for the second difference of one pair,
// read off precomputed values of f. hist must have q zeroed slots on entry
// and is rezeroed before returning.
std::pair<std::uint64_t, std::uint64_t> pair_histogram(const std::vector<std::uint64_t>& val,
                                                       std::uint64_t q, std::uint64_t a,
                                                       std::uint64_t ap,
                                                       std::vector<std::uint32_t>& hist) {
    const std::uint64_t ab = a ^ ap;
    for (std::uint64_t x = 0; x < q; ++x)
        ++hist[val[x] ^ val[x ^ a] ^ val[x ^ ap] ^ val[x ^ ab]];
    std::uint64_t best = 0, beta = 0;
    for (std::uint64_t b = 0; b < q; ++b) {
        if (hist[b] > best) {
            best = hist[b];
            beta = b;
        }
    }
    std::fill(hist.begin(), hist.end(), 0);
    return {best, beta};
}

// Pair index -> (alpha, alpha_prime) over 1 <= alpha < alpha_prime < q in
// lexicographic order.
void unrank_pair(std::uint64_t idx, std::uint64_t q, std::uint64_t& a, std::uint64_t& ap) {
    a = 1;
    std::uint64_t row = q - 2;
    while (idx >= row) {
        idx -= row;
        ++a;
        --row;
    }
    ap = a + 1 + idx;
}

void advance_pair(std::uint64_t q, std::uint64_t& a, std::uint64_t& ap) {
    if (++ap == q) {
        ++a;
        ap = a + 1;
    }
}

// The x^(m-j) coefficient of the second difference along (alpha, alpha')
// equals the sum over s of binom(m-j+s, s) * a_{j-s} * C_s, where a_i is the
// x^(m-i) coefficient of f and C_s = alpha^s + alpha'^s + (alpha+alpha')^s.
// Odd binomials are submask tests, and C_s vanishes when s is a power of two,
// so most terms drop out. The plan lists the surviving (s, a_{j-s}) terms per
// j, which lets one pair's degree be read off with a handful of
// multiplications instead of a full polynomial shift.
struct DegreeScanPlan {
    int m = 0;
    std::vector<int> jlist; // ascending j with at least one surviving term
    std::vector<std::vector<std::pair<int, std::uint64_t>>> terms; // parallel to jlist
    int smax = 0;
    // True when some j < m keeps exactly one term whose s is 3 times a power
    // of two: then C_s = C_3^(2^t) never vanishes, so every pair's second
    // difference has degree >= m - j. That rules out constant second
    // differences globally and makes it safe to stop scanning a slice once
    // its best count reaches `upper`.
    bool certificate = false;
    int upper = 0; // m - jlist.front(): degree bound over all pairs
};

DegreeScanPlan build_plan(const Poly& f) {
    DegreeScanPlan plan;
    plan.m = f.degree();
    for (int j = 1; j <= plan.m; ++j) {
        std::vector<std::pair<int, std::uint64_t>> t;
        for (int s = 3; s <= j; ++s) {
            if ((s & (s - 1)) == 0) continue;              // C_s = 0
            if (((plan.m - j + s) & s) != s) continue;     // even binomial
            std::uint64_t a = f.coeff(plan.m - (j - s));
            if (a == 0) continue;
            t.emplace_back(s, a);
        }
        if (t.empty()) continue;
        if (t.size() == 1 && j < plan.m) {
            int s = t[0].first;
            while ((s & 1) == 0) s >>= 1;
            if (s == 3) plan.certificate = true;
        }
        if (plan.jlist.empty()) plan.upper = plan.m - j;
        plan.smax = std::max(plan.smax, t.back().first);
        plan.jlist.push_back(j);
        plan.terms.push_back(std::move(t));
    }
    return plan;
}

struct SliceResult {
    Candidate best;
    bool any_constant = false;
};

} // namespace

std::uint64_t solution_count(const Poly& f, std::uint64_t alpha, std::uint64_t beta) {
    if (alpha == 0) throw InvalidArgument("difference direction must be nonzero");
    const Field& F = *f.field();
    if (alpha >= F.order() || beta >= F.order())
        throw InvalidArgument("argument bits exceed the field size");
    std::uint64_t c = 0;
    for (std::uint64_t x = 0; x < F.order(); ++x)
        if ((poly_eval(f, x) ^ poly_eval(f, x ^ alpha)) == beta) ++c;
    return c;
}

std::uint64_t solution_count(const Poly& f, const DerivativePair& p, std::uint64_t beta) {
    const Field& F = *f.field();
    if (p.alpha >= F.order() || p.alpha_prime >= F.order() || beta >= F.order())
        throw InvalidArgument("argument bits exceed the field size");
    const std::uint64_t ab = p.alpha ^ p.alpha_prime;
    std::uint64_t c = 0;
    for (std::uint64_t x = 0; x < F.order(); ++x) {
        std::uint64_t v = poly_eval(f, x) ^ poly_eval(f, x ^ p.alpha) ^
                          poly_eval(f, x ^ p.alpha_prime) ^ poly_eval(f, x ^ ab);
        if (v == beta) ++c;
    }
    return c;
}

std::pair<std::uint64_t, std::uint64_t> delta2_for_pair(const Poly& f, const DerivativePair& p) {
    const std::uint64_t q = f.field()->order();
    if (p.alpha >= q || p.alpha_prime >= q)
        throw InvalidArgument("direction bits exceed the field size");
    auto val = value_table(f);
    std::vector<std::uint32_t> hist(q, 0);
    return pair_histogram(val, q, p.alpha, p.alpha_prime, hist);
}

UniformityReport delta(const Poly& f, int threads) {
    const std::uint64_t q = f.field()->order();
    auto val = value_table(f);
    std::uint64_t rows = q - 1;
    int nthreads = threads < 1 ? 1 : threads;
    std::vector<Candidate> cands(static_cast<std::size_t>(nthreads));
    std::vector<std::map<std::uint64_t, std::uint64_t>> sums(static_cast<std::size_t>(nthreads));
    std::vector<std::uint8_t> row_constant(rows, 0);

    parallel_slices(rows, nthreads, [&](int w, std::uint64_t lo, std::uint64_t hi) {
        std::vector<std::uint32_t> hist(q, 0);
        auto& cand = cands[static_cast<std::size_t>(w)];
        auto& summary = sums[static_cast<std::size_t>(w)];
        for (std::uint64_t i = lo; i < hi; ++i) {
            const std::uint64_t a = i + 1;
            for (std::uint64_t x = 0; x < q; ++x) ++hist[val[x] ^ val[x ^ a]];
            std::uint64_t best = 0, beta = 0;
            for (std::uint64_t b = 0; b < q; ++b) {
                if (hist[b] == 0) continue;
                ++summary[hist[b]];
                if (hist[b] > best) {
                    best = hist[b];
                    beta = b;
                }
            }
            cand.offer(best, a, 0, beta);
            if (derivative(f, a).degree() <= 0) row_constant[i] = 1;
            std::fill(hist.begin(), hist.end(), 0);
        }
    });

    UniformityReport rep;
    rep.order = 1;
    Candidate all;
    std::map<std::uint64_t, std::uint64_t> summary;
    for (int w = 0; w < nthreads; ++w) {
        all.merge(cands[static_cast<std::size_t>(w)]);
        for (auto [c, cells] : sums[static_cast<std::size_t>(w)]) summary[c] += cells;
    }
    rep.value = all.count;
    rep.witness = {all.alpha, 0, all.beta};
    rep.degenerate =
        std::any_of(row_constant.begin(), row_constant.end(), [](std::uint8_t v) { return v != 0; });
    for (auto it = summary.rbegin(); it != summary.rend() && rep.histogram_summary.size() < 32; ++it)
        rep.histogram_summary.emplace_back(it->first, it->second);
    return rep;
}

UniformityReport delta2(const Poly& f, int threads) {
    const FieldPtr& field = f.field();
    const Field& F = *field;
    const std::uint64_t q = F.order();

    UniformityReport rep;
    rep.order = 2;

    // Degree <= 2 (zero polynomial included): the first difference is already
    // constant, so every pair's second difference is the zero polynomial.
    if (f.degree() <= 2) {
        rep.value = q;
        rep.witness = {1, 2, 0};
        rep.degenerate = true;
        return rep;
    }

    const auto val = value_table(f);
    const DegreeScanPlan plan = build_plan(f);
    const std::uint64_t pairs = (q - 1) * (q - 2) / 2;
    int nthreads = threads < 1 ? 1 : threads;

    std::vector<SliceResult> results(static_cast<std::size_t>(nthreads));
    std::atomic<std::uint64_t> global_best{0};

    parallel_slices(pairs, nthreads, [&](int w, std::uint64_t lo, std::uint64_t hi) {
        SliceResult& out = results[static_cast<std::size_t>(w)];
        std::vector<std::uint32_t> hist(q, 0);
        std::vector<std::uint64_t> cs(static_cast<std::size_t>(plan.smax) + 1, 0);
        std::uint64_t a, ap;
        unrank_pair(lo, q, a, ap);
        for (std::uint64_t p = lo; p < hi; ++p, advance_pair(q, a, ap)) {
            if (out.best.has) {
                // With the certificate no pair can be constant, so nothing
                // past this slice's best is worth visiting once the degree
                // bound is reached.
                if (plan.certificate && out.best.count >= static_cast<std::uint64_t>(plan.upper))
                    break;
                // The absolute maximum: later pairs only tie with
                // lexicographically larger witnesses, and constant pairs have
                // already been seen.
                if (out.best.count == q && out.any_constant) break;
            }

            // Lazy powers of alpha, alpha', alpha + alpha' for C_s.
            std::uint64_t pa = 1, pap = 1, ps = 1;
            int filled = 0;
            auto c_of = [&](int s) {
                while (filled < s) {
                    pa = F.mul(pa, a);
                    pap = F.mul(pap, ap);
                    ps = F.mul(ps, a ^ ap);
                    ++filled;
                    cs[static_cast<std::size_t>(filled)] = pa ^ pap ^ ps;
                }
                return cs[static_cast<std::size_t>(s)];
            };

            int e = -2; // -2: all coefficients vanished
            std::uint64_t top = 0;
            for (std::size_t ji = 0; ji < plan.jlist.size(); ++ji) {
                std::uint64_t v = 0;
                for (auto [s, coef] : plan.terms[ji]) v ^= F.mul(coef, c_of(s));
                if (v != 0) {
                    e = plan.m - plan.jlist[ji];
                    top = v;
                    break;
                }
            }

            if (e == -2) { // zero second difference
                out.any_constant = true;
                out.best.offer(q, a, ap, 0);
                continue;
            }
            if (e == 0) { // constant nonzero second difference
                out.any_constant = true;
                out.best.offer(q, a, ap, top);
                continue;
            }

            // A nonconstant second difference of degree e has at most e roots
            // per target value, so the pair cannot beat a count it does not
            // exceed. Within the slice, ties only arrive with lex-larger
            // witnesses; across slices the merge re-checks ties anyway.
            const auto eu = static_cast<std::uint64_t>(e);
            if ((out.best.has && eu <= out.best.count) ||
                eu < global_best.load(std::memory_order_relaxed))
                continue;

            auto [cnt, beta] = pair_histogram(val, q, a, ap, hist);
            out.best.offer(cnt, a, ap, beta);
            std::uint64_t seen = global_best.load(std::memory_order_relaxed);
            while (cnt > seen &&
                   !global_best.compare_exchange_weak(seen, cnt, std::memory_order_relaxed)) {
            }
        }
    });

    Candidate all;
    bool any_constant = false;
    for (auto& r : results) {
        all.merge(r.best);
        any_constant = any_constant || r.any_constant;
    }
    rep.value = all.count;
    rep.witness = {all.alpha, all.alpha_prime, all.beta};
    rep.degenerate = any_constant;
    return rep;
}

UniformityReport delta2_exhaustive(const Poly& f, int threads) {
    const FieldPtr& field = f.field();
    const std::uint64_t q = field->order();

    UniformityReport rep;
    rep.order = 2;
    if (f.degree() <= 2) {
        rep.value = q;
        rep.witness = {1, 2, 0};
        rep.degenerate = true;
        return rep;
    }

    const auto val = value_table(f);
    const std::uint64_t pairs = (q - 1) * (q - 2) / 2;
    int nthreads = threads < 1 ? 1 : threads;
    std::vector<SliceResult> results(static_cast<std::size_t>(nthreads));

    parallel_slices(pairs, nthreads, [&](int w, std::uint64_t lo, std::uint64_t hi) {
        SliceResult& out = results[static_cast<std::size_t>(w)];
        std::vector<std::uint32_t> hist(q, 0);
        std::uint64_t a, ap;
        unrank_pair(lo, q, a, ap);
        for (std::uint64_t p = lo; p < hi; ++p, advance_pair(q, a, ap)) {
            auto [cnt, beta] = pair_histogram(val, q, a, ap, hist);
            out.best.offer(cnt, a, ap, beta);
            if (second_derivative(f, DerivativePair{a, ap}).degree() <= 0)
                out.any_constant = true;
        }
    });

    Candidate all;
    bool any_constant = false;
    for (auto& r : results) {
        all.merge(r.best);
        any_constant = any_constant || r.any_constant;
    }
    rep.value = all.count;
    rep.witness = {all.alpha, all.alpha_prime, all.beta};
    rep.degenerate = any_constant;
    return rep;
}

namespace {

// Poly-constancy of the second difference of x^e along (1, alpha), read from
// the nonzero coefficients C_j over submasks j of e.
bool monomial_pair_constant(const Field& F, std::uint64_t e, std::uint64_t alpha) {
    for (std::uint64_t j = e; j != 0; j = (j - 1) & e) {
        if (j == e && e != 0) continue; // the constant term of the result
        if (j < 3 || (j & (j - 1)) == 0) continue;
        std::uint64_t c = 1 ^ F.pow(alpha, j) ^ F.pow(alpha ^ 1, j);
        if (c != 0) return false;
    }
    return true;
}

} // namespace

UniformityReport delta2_monomial(std::uint64_t e, int n, int threads) {
    auto field = make_field(n);
    const Field& F = *field;
    const std::uint64_t q = F.order();
    if (e >= q) throw InvalidArgument("monomial exponent must be below the field order");

    std::vector<std::uint64_t> val(q);
    for (std::uint64_t x = 0; x < q; ++x) val[x] = F.pow(x, e);

    const std::uint64_t rows = q - 2; // alpha in [2, q)
    int nthreads = threads < 1 ? 1 : threads;
    std::vector<Candidate> cands(static_cast<std::size_t>(nthreads));
    std::vector<std::vector<std::uint64_t>> full_rows(static_cast<std::size_t>(nthreads));

    parallel_slices(rows, nthreads, [&](int w, std::uint64_t lo, std::uint64_t hi) {
        auto& cand = cands[static_cast<std::size_t>(w)];
        std::vector<std::uint32_t> hist(q, 0);
        for (std::uint64_t i = lo; i < hi; ++i) {
            const std::uint64_t a = i + 2;
            auto [cnt, beta] = pair_histogram(val, q, 1, a, hist);
            cand.offer(cnt, 1, a, beta);
            if (cnt == q) full_rows[static_cast<std::size_t>(w)].push_back(a);
        }
    });

    Candidate all;
    for (auto& c : cands) all.merge(c);

    UniformityReport rep;
    rep.order = 2;
    rep.value = all.count;
    rep.witness = {all.alpha, all.alpha_prime, all.beta};
    rep.degenerate = false;
    if (all.count == q) {
        // Separate constant-as-polynomial from constant-as-function.
        for (auto& rows_w : full_rows) {
            for (auto a : rows_w) {
                if (monomial_pair_constant(F, e, a)) {
                    rep.degenerate = true;
                    break;
                }
            }
            if (rep.degenerate) break;
        }
    }
    return rep;
}

} // namespace diffuni
