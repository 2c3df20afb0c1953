#include "diffuni/poly.hpp"

#include <algorithm>

namespace diffuni {

namespace {

void check_same_field(const Poly& a, const Poly& b) {
    if (!a.field()->same_spec(*b.field()))
        throw SpecMismatch("polynomials belong to fields with different specs");
}

// Inverse of squaring on polynomials whose odd-degree coefficients all
// vanish: halve exponents, take element square roots.
Poly poly_sqrt_even(const Poly& f) {
    const Field& F = *f.field();
    std::vector<std::uint64_t> c((static_cast<std::size_t>(f.degree()) / 2) + 1, 0);
    for (int i = 0; i <= f.degree(); ++i) {
        if (f.coeff(i) == 0) continue;
        if (i & 1) throw InternalInvariantViolation("odd coefficient in a perfect square");
        c[static_cast<std::size_t>(i / 2)] = F.sqrt(f.coeff(i));
    }
    return Poly(f.field(), std::move(c));
}

} // namespace

Poly::Poly(FieldPtr field) : field_(std::move(field)) {
    if (!field_) throw InvalidArgument("polynomial needs a field");
}

Poly::Poly(FieldPtr field, std::vector<std::uint64_t> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
    if (!field_) throw InvalidArgument("polynomial needs a field");
    for (auto c : coeffs_)
        if (c >= field_->order()) throw InvalidArgument("coefficient bits exceed the field size");
    normalize();
}

void Poly::normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

std::uint64_t Poly::leading() const {
    if (coeffs_.empty()) throw InvalidArgument("the zero polynomial has no leading coefficient");
    return coeffs_.back();
}

bool Poly::operator==(const Poly& o) const {
    check_same_field(*this, o);
    return coeffs_ == o.coeffs_;
}

Poly poly_zero(const FieldPtr& field) { return Poly(field); }

Poly poly_constant(const FieldPtr& field, std::uint64_t c) {
    return Poly(field, std::vector<std::uint64_t>{c});
}

Poly poly_monomial(const FieldPtr& field, std::uint64_t c, std::uint64_t e) {
    if (c == 0) return Poly(field);
    std::vector<std::uint64_t> v(e + 1, 0);
    v[e] = c;
    return Poly(field, std::move(v));
}

Poly poly_add(const Poly& a, const Poly& b) {
    check_same_field(a, b);
    std::vector<std::uint64_t> c(std::max(a.coeffs().size(), b.coeffs().size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = a.coeff(static_cast<int>(i)) ^ b.coeff(static_cast<int>(i));
    return Poly(a.field(), std::move(c));
}

Poly poly_mul(const Poly& a, const Poly& b) {
    check_same_field(a, b);
    if (a.is_zero() || b.is_zero()) return Poly(a.field());
    const Field& F = *a.field();
    std::vector<std::uint64_t> c(a.coeffs().size() + b.coeffs().size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        if (a.coeffs()[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeffs().size(); ++j)
            c[i + j] ^= F.mul(a.coeffs()[i], b.coeffs()[j]);
    }
    return Poly(a.field(), std::move(c));
}

Poly poly_scale(const Poly& a, std::uint64_t c) {
    const Field& F = *a.field();
    if (c >= F.order()) throw InvalidArgument("scalar bits exceed the field size");
    std::vector<std::uint64_t> v(a.coeffs());
    for (auto& x : v) x = F.mul(x, c);
    return Poly(a.field(), std::move(v));
}

std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b) {
    check_same_field(a, b);
    if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
    if (a.is_zero() || a.degree() < b.degree()) return {Poly(a.field()), a};
    const Field& F = *a.field();
    std::uint64_t lead_inv = F.inv(b.leading());
    std::vector<std::uint64_t> rem(a.coeffs());
    std::vector<std::uint64_t> quot(static_cast<std::size_t>(a.degree() - b.degree()) + 1, 0);
    for (int i = a.degree(); i >= b.degree(); --i) {
        std::uint64_t c = rem[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        std::uint64_t k = F.mul(c, lead_inv);
        quot[static_cast<std::size_t>(i - b.degree())] = k;
        for (int j = 0; j <= b.degree(); ++j)
            rem[static_cast<std::size_t>(i - b.degree() + j)] ^= F.mul(k, b.coeff(j));
    }
    return {Poly(a.field(), std::move(quot)), Poly(a.field(), std::move(rem))};
}

Poly make_monic(const Poly& a) {
    if (a.is_zero()) throw InvalidArgument("cannot scale the zero polynomial monic");
    if (a.leading() == 1) return a;
    return poly_scale(a, a.field()->inv(a.leading()));
}

Poly poly_gcd(const Poly& a, const Poly& b) {
    check_same_field(a, b);
    if (a.is_zero() && b.is_zero()) throw InvalidArgument("gcd of two zero polynomials");
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = poly_divmod(x, y).second;
        x = y;
        y = r;
    }
    return x.is_zero() ? x : make_monic(x);
}

std::uint64_t poly_eval(const Poly& f, std::uint64_t x) {
    const Field& F = *f.field();
    std::uint64_t r = 0;
    for (std::size_t i = f.coeffs().size(); i-- > 0;) r = F.mul(r, x) ^ f.coeffs()[i];
    return r;
}

std::vector<std::uint64_t> value_table(const Poly& f) {
    const std::uint64_t q = f.field()->order();
    std::vector<std::uint64_t> t(q);
    for (std::uint64_t x = 0; x < q; ++x) t[x] = poly_eval(f, x);
    return t;
}

Poly poly_shift(const Poly& f, std::uint64_t c) {
    const Field& F = *f.field();
    if (c >= F.order()) throw InvalidArgument("shift bits exceed the field size");
    if (f.is_zero() || c == 0) return f;
    int d = f.degree();
    std::vector<std::uint64_t> cpow(static_cast<std::size_t>(d) + 1);
    cpow[0] = 1;
    for (int i = 1; i <= d; ++i) cpow[static_cast<std::size_t>(i)] = F.mul(cpow[static_cast<std::size_t>(i - 1)], c);
    std::vector<std::uint64_t> out(static_cast<std::size_t>(d) + 1, 0);
    for (int i = 0; i <= d; ++i) {
        std::uint64_t a = f.coeff(i);
        if (a == 0) continue;
        // (x+c)^i expands over exactly the submasks k of i mod 2.
        for (int k = 0; k <= i; ++k)
            if ((i & k) == k) out[static_cast<std::size_t>(k)] ^= F.mul(a, cpow[static_cast<std::size_t>(i - k)]);
    }
    return Poly(f.field(), std::move(out));
}

Poly poly_compose(const Poly& g, const Poly& h) {
    check_same_field(g, h);
    Poly r(g.field());
    // Horner in h.
    for (std::size_t i = g.coeffs().size(); i-- > 0;) {
        r = poly_mul(r, h);
        r = poly_add(r, poly_constant(g.field(), g.coeffs()[i]));
    }
    return r;
}

Poly hasse_derivative(const Poly& f, int r) {
    if (r < 0) throw InvalidArgument("negative Hasse derivative order");
    if (r == 0) return f;
    if (f.is_zero() || f.degree() < r) return Poly(f.field());
    std::vector<std::uint64_t> out(static_cast<std::size_t>(f.degree() - r) + 1, 0);
    for (int i = r; i <= f.degree(); ++i)
        if ((i & r) == r) out[static_cast<std::size_t>(i - r)] = f.coeff(i);
    return Poly(f.field(), std::move(out));
}

DerivativePair make_derivative_pair(const Field& f, std::uint64_t alpha,
                                    std::uint64_t alpha_prime) {
    if (alpha >= f.order() || alpha_prime >= f.order())
        throw InvalidArgument("direction bits exceed the field size");
    if (alpha == 0 || alpha_prime == 0)
        throw InvalidArgument("directions must be nonzero");
    if (alpha == alpha_prime) throw InvalidArgument("directions must be distinct");
    if (alpha > alpha_prime) std::swap(alpha, alpha_prime);
    return DerivativePair{alpha, alpha_prime};
}

Poly derivative(const Poly& f, std::uint64_t alpha) {
    if (alpha == 0) throw InvalidArgument("difference direction must be nonzero");
    return poly_add(poly_shift(f, alpha), f);
}

Poly second_derivative(const Poly& f, const DerivativePair& p) {
    return derivative(derivative(f, p.alpha), p.alpha_prime);
}

std::vector<std::pair<std::uint64_t, int>> roots_in_field(const Poly& f) {
    if (f.is_zero()) throw InvalidArgument("the zero polynomial vanishes everywhere");
    const Field& F = *f.field();
    std::vector<std::pair<std::uint64_t, int>> out;
    for (std::uint64_t a = 0; a < F.order(); ++a) {
        if (poly_eval(f, a) != 0) continue;
        Poly lin(f.field(), {a, 1});
        int mult = 0;
        Poly rest = f;
        for (;;) {
            auto [q, r] = poly_divmod(rest, lin);
            if (!r.is_zero()) break;
            ++mult;
            rest = q;
        }
        out.emplace_back(a, mult);
    }
    return out;
}

bool is_squarefree(const Poly& f) {
    if (f.is_zero()) throw InvalidArgument("squarefree test on the zero polynomial");
    if (f.degree() == 0) return true;
    Poly d1 = hasse_derivative(f, 1);
    // Vanishing derivative in characteristic 2 means a perfect square.
    if (d1.is_zero()) return false;
    return poly_gcd(f, d1).degree() == 0;
}

Poly poly_radical(const Poly& f) {
    if (f.is_zero()) throw InvalidArgument("radical of the zero polynomial");
    if (f.degree() == 0) return poly_constant(f.field(), 1);
    Poly d1 = hasse_derivative(f, 1);
    if (d1.is_zero()) return poly_radical(poly_sqrt_even(f));
    Poly w = poly_gcd(f, d1);
    if (w.degree() == 0) return make_monic(f);
    // f/w carries each odd-multiplicity factor once; w holds everything else.
    Poly r = make_monic(poly_divmod(f, w).first);
    Poly rw = poly_radical(w);
    Poly g = poly_gcd(r, rw);
    return make_monic(poly_divmod(poly_mul(r, rw), g).first);
}

std::uint64_t resultant(const Poly& a, const Poly& b) {
    check_same_field(a, b);
    if (a.is_zero() && b.is_zero())
        throw InvalidArgument("resultant of two zero polynomials");
    const Field& F = *a.field();
    if (a.is_zero() || b.is_zero()) {
        // Shared convention: zero against a constant is 1 (empty Sylvester
        // matrix), zero against positive degree is 0.
        const Poly& other = a.is_zero() ? b : a;
        return other.degree() == 0 ? 1 : 0;
    }
    Poly x = a, y = b;
    if (x.degree() < y.degree()) std::swap(x, y);
    std::uint64_t res = 1;
    while (y.degree() >= 1) {
        Poly r = poly_divmod(x, y).second;
        if (r.is_zero()) return 0;
        res = F.mul(res, F.pow(y.leading(), static_cast<std::uint64_t>(x.degree() - r.degree())));
        x = y;
        y = r;
    }
    return F.mul(res, F.pow(y.coeff(0), static_cast<std::uint64_t>(x.degree())));
}

Poly s_poly(const FieldPtr& field, std::uint64_t gamma) {
    if (gamma >= field->order()) throw InvalidArgument("gamma bits exceed the field size");
    if (gamma == 0) throw InvalidArgument("gamma must be nonzero");
    return Poly(field, {0, gamma, 1});
}

Poly t_poly(const FieldPtr& field, const DerivativePair& p) {
    const Field& F = *field;
    std::uint64_t a = p.alpha, b = p.alpha_prime;
    std::uint64_t quad = F.sqr(a) ^ F.sqr(b) ^ F.mul(a, b);
    std::uint64_t lin = F.mul(F.mul(a, b), a ^ b);
    return Poly(field, {0, lin, quad, 0, 1});
}

} // namespace diffuni
