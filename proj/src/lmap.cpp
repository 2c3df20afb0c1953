#include "diffuni/lmap.hpp"

#include <algorithm>
#include <vector>

namespace diffuni {

int d_of_m(int m) {
    if (m < 7) throw InvalidArgument("degree must be at least 7, got " + std::to_string(m));
    switch (m % 4) {
        case 0: return (m - 4) / 4;
        case 1: return (m - 5) / 4;
        case 2: return (m - 6) / 4;
        default: return (m - 3) / 4;
    }
}

int delta0_of_m(int m) {
    if (m < 7) throw InvalidArgument("degree must be at least 7, got " + std::to_string(m));
    switch (m % 8) {
        case 0: return m - 4;
        case 1: return m - 5;
        case 2: return m - 6;
        case 7: return m - 3;
        default:
            throw UnsupportedResidue("no generic leading term for degree " + std::to_string(m) +
                                     " (mod 8 residue " + std::to_string(m % 8) + ")");
    }
}

LResult compute_L(const Poly& f, const DerivativePair& p) {
    const FieldPtr& field = f.field();
    const Field& F = *field;
    Poly d2 = second_derivative(f, p);
    Poly t = t_poly(field, p);

    std::vector<std::uint64_t> gc;
    std::vector<Poly> tpow{poly_constant(field, 1)};
    Poly r = d2;
    while (!r.is_zero()) {
        int e = r.degree();
        if (e % 4 != 0)
            throw InternalInvariantViolation("second difference degree is not a multiple of 4");
        auto k = static_cast<std::size_t>(e / 4);
        while (tpow.size() <= k) tpow.push_back(poly_mul(tpow.back(), t));
        std::uint64_t c = r.leading();
        if (gc.size() <= k) gc.resize(k + 1, 0);
        gc[k] = c;
        r = poly_add(r, poly_scale(tpow[k], c));
        if (!r.is_zero() && r.degree() >= e)
            throw InternalInvariantViolation("peel step failed to lower the degree");
    }

    LResult out{Poly(field, gc), std::nullopt, std::nullopt};

    int dbound;
    if (f.degree() >= 7) {
        dbound = d_of_m(f.degree());
    } else if (!d2.is_zero()) {
        dbound = d2.degree() / 4;
    } else {
        return out;
    }
    if (out.g.degree() == dbound) {
        std::uint64_t b0 = out.g.coeff(dbound);
        out.b0 = b0;
        out.b1_over_b0 = dbound >= 1 ? F.div(out.g.coeff(dbound - 1), b0) : 0;
    }
    return out;
}

std::uint64_t b1_over_b0_formula(const Poly& f, const DerivativePair& p) {
    int m = f.degree();
    if (m < 7) throw InvalidArgument("degree must be at least 7");
    int r8 = m % 8;
    if (r8 != 0 && r8 != 1 && r8 != 2 && r8 != 7)
        throw UnsupportedResidue("no closed form for degree " + std::to_string(m) +
                                 " (mod 8 residue " + std::to_string(r8) + ")");
    const Field& F = *f.field();
    const std::uint64_t al = p.alpha, ap = p.alpha_prime;
    if (al >= F.order() || ap >= F.order())
        throw InvalidArgument("direction bits exceed the field size");

    // a_i is the x^(m-i) coefficient of f.
    auto A = [&](int i) { return f.coeff(m - i); };

    const std::uint64_t al2 = F.sqr(al), ap2 = F.sqr(ap);
    const std::uint64_t t1 = F.mul(al2, ap) ^ F.mul(ap2, al); // alpha*alpha'*(alpha+alpha')
    const std::uint64_t t2 = al2 ^ F.mul(al, ap) ^ ap2;
    const std::uint64_t extra = F.sqr(t2); // alpha^4 + alpha^2 alpha'^2 + alpha'^4

    // Symmetric sums showing up in the two longest rows.
    auto s06 = [&] {
        std::uint64_t s = 0;
        for (int i = 0; i <= 6; ++i) s ^= F.mul(F.pow(al, static_cast<std::uint64_t>(i)),
                                                F.pow(ap, static_cast<std::uint64_t>(6 - i)));
        return s;
    };
    auto s16 = [&] {
        std::uint64_t s = 0;
        for (int i = 1; i <= 6; ++i) s ^= F.mul(F.pow(al, static_cast<std::uint64_t>(i)),
                                                F.pow(ap, static_cast<std::uint64_t>(7 - i)));
        return s;
    };

    std::uint64_t num, div, add;
    switch (m % 16) {
        case 0:
            num = F.mul(t1, A(2)) ^ F.mul(t2, A(3)) ^ A(5);
            div = A(1);
            add = 0;
            break;
        case 1:
            num = F.mul(t1, A(3)) ^ F.mul(t2, A(4)) ^ A(6);
            div = A(2);
            add = 0;
            break;
        case 2:
            num = F.mul(t1, A(4)) ^ F.mul(t2, A(5)) ^ A(7);
            div = A(3);
            add = 0;
            break;
        case 7:
            num = F.mul(t1, A(1)) ^ F.mul(t2, A(2)) ^ A(4);
            div = A(0);
            add = extra;
            break;
        case 8:
            num = F.mul(t1, A(2)) ^ F.mul(t2, A(3)) ^ A(5);
            div = A(1);
            add = extra;
            break;
        case 9:
            num = F.mul(s06(), A(0)) ^ F.mul(t1, A(3)) ^ F.mul(t2, A(4)) ^ A(6);
            div = A(2);
            add = extra;
            break;
        case 10:
            num = F.mul(s16(), A(0)) ^ F.mul(s06(), A(1)) ^ F.mul(t1, A(4)) ^ F.mul(t2, A(5)) ^
                  A(7);
            div = A(3);
            add = extra;
            break;
        default: // 15
            num = F.mul(t1, A(1)) ^ F.mul(t2, A(2)) ^ A(4);
            div = A(0);
            add = 0;
            break;
    }
    if (div == 0)
        throw DegreeDrop("the coefficient dividing the closed form vanishes for this input");
    return F.div(num, div) ^ add;
}

Poly kernel_witness(const Poly& f, std::uint64_t alpha) {
    if (!derivative(f, alpha).is_zero())
        throw InvalidArgument("polynomial is not killed by the difference");
    const FieldPtr& field = f.field();
    Poly s = s_poly(field, alpha);
    std::vector<std::uint64_t> hc;
    std::vector<Poly> spow{poly_constant(field, 1)};
    Poly r = f;
    while (!r.is_zero()) {
        int e = r.degree();
        if (e % 2 != 0) throw InternalInvariantViolation("kernel member with odd degree step");
        auto k = static_cast<std::size_t>(e / 2);
        while (spow.size() <= k) spow.push_back(poly_mul(spow.back(), s));
        std::uint64_t c = r.leading();
        if (hc.size() <= k) hc.resize(k + 1, 0);
        hc[k] = c;
        r = poly_add(r, poly_scale(spow[k], c));
    }
    return Poly(field, hc);
}

Poly double_kernel_witness(const Poly& f, const DerivativePair& p) {
    if (!derivative(f, p.alpha).is_zero() || !derivative(f, p.alpha_prime).is_zero())
        throw InvalidArgument("polynomial is not killed by both differences");
    const FieldPtr& field = f.field();
    Poly t = t_poly(field, p);
    std::vector<std::uint64_t> hc;
    std::vector<Poly> tpow{poly_constant(field, 1)};
    Poly r = f;
    while (!r.is_zero()) {
        int e = r.degree();
        if (e % 4 != 0)
            throw InternalInvariantViolation("double kernel member with degree step not 0 mod 4");
        auto k = static_cast<std::size_t>(e / 4);
        while (tpow.size() <= k) tpow.push_back(poly_mul(tpow.back(), t));
        std::uint64_t c = r.leading();
        if (hc.size() <= k) hc.resize(k + 1, 0);
        hc[k] = c;
        r = poly_add(r, poly_scale(tpow[k], c));
    }
    return Poly(field, hc);
}

bool rank_check_L(int m, const DerivativePair& p, const FieldPtr& field) {
    const Field& F = *field;
    int d = d_of_m(m);
    std::vector<std::vector<std::uint64_t>> rows;
    rows.reserve(static_cast<std::size_t>(m) + 1);
    for (int k = 0; k <= m; ++k) {
        LResult r = compute_L(poly_monomial(field, 1, static_cast<std::uint64_t>(k)), p);
        if (r.g.degree() > d)
            throw InternalInvariantViolation("monomial image exceeds the degree bound");
        std::vector<std::uint64_t> row(static_cast<std::size_t>(d) + 1, 0);
        for (int i = 0; i <= d; ++i) row[static_cast<std::size_t>(i)] = r.g.coeff(i);
        rows.push_back(std::move(row));
    }
    // Row-reduce over the field; surjective iff full column rank d+1.
    int rank = 0;
    for (int col = 0; col <= d && rank < static_cast<int>(rows.size()); ++col) {
        int pivot = -1;
        for (int i = rank; i < static_cast<int>(rows.size()); ++i) {
            if (rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)] != 0) {
                pivot = i;
                break;
            }
        }
        if (pivot < 0) continue;
        std::swap(rows[static_cast<std::size_t>(rank)], rows[static_cast<std::size_t>(pivot)]);
        auto& pr = rows[static_cast<std::size_t>(rank)];
        std::uint64_t piv_inv = F.inv(pr[static_cast<std::size_t>(col)]);
        for (auto& v : pr) v = F.mul(v, piv_inv);
        for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
            if (i == rank) continue;
            auto& ri = rows[static_cast<std::size_t>(i)];
            std::uint64_t c = ri[static_cast<std::size_t>(col)];
            if (c == 0) continue;
            for (std::size_t j = 0; j <= static_cast<std::size_t>(d); ++j)
                ri[j] ^= F.mul(c, pr[j]);
        }
        ++rank;
    }
    return rank == d + 1;
}

} // namespace diffuni
