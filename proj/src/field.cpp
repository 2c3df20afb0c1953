#include "diffuni/field.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>

namespace diffuni {

namespace {

// Remainder of a mod b for polynomials over F_2 packed into words. b != 0.
std::uint64_t poly2_mod(std::uint64_t a, std::uint64_t b) {
    int db = 63 - __builtin_clzll(b);
    while (a != 0) {
        int da = 63 - __builtin_clzll(a);
        if (da < db) break;
        a ^= b << (da - db);
    }
    return a;
}

bool poly2_irreducible(std::uint64_t f, int n) {
    if (n < 1) return false;
    // Trial division by every polynomial of degree 1..n/2. A composite divisor
    // implies an irreducible one of no larger degree, so the sweep is complete.
    for (int d = 1; d <= n / 2; ++d) {
        for (std::uint64_t g = std::uint64_t(1) << d; g < (std::uint64_t(1) << (d + 1)); ++g) {
            if (poly2_mod(f, g) == 0) return false;
        }
    }
    return true;
}

// Lexicographically smallest irreducible polynomial of each degree 2..24,
// encoded with bit i for the x^i coefficient. Construction re-validates these
// by trial division, and the unit tests re-derive the small ones by search.
constexpr std::array<std::uint64_t, 25> kDefaultReduction = {
    0,         0,         0x7,       0xB,        0x13,      0x25,      0x43,
    0x83,      0x11B,     0x203,     0x409,      0x805,     0x1009,    0x201B,
    0x4021,    0x8003,    0x1002B,   0x20009,    0x40009,   0x80027,   0x100009,
    0x200005,  0x400003,  0x800021,  0x100001B,
};

} // namespace

std::uint64_t Field::default_reduction(int n) {
    if (n < 2 || n > 24)
        throw ConstructionError("field degree must be between 2 and 24, got " + std::to_string(n));
    return kDefaultReduction[static_cast<std::size_t>(n)];
}

Field::Field(int n) : Field(n, default_reduction(n)) {}

Field::Field(int n, std::uint64_t reduction) : n_(n), reduction_(reduction), trace_mask_(0) {
    if (n < 2 || n > 24)
        throw ConstructionError("field degree must be between 2 and 24, got " + std::to_string(n));
    if (((reduction >> n) != 1) || !(reduction & 1))
        throw ConstructionError("modulus must have degree exactly " + std::to_string(n) +
                                " and a nonzero constant term");
    if (!poly2_irreducible(reduction, n))
        throw ConstructionError("modulus is reducible over F_2");
    init_trace_mask();
}

void Field::init_trace_mask() {
    for (int j = 0; j < n_; ++j) {
        std::uint64_t a = std::uint64_t(1) << j;
        std::uint64_t t = 0;
        std::uint64_t p = a;
        for (int i = 0; i < n_; ++i) {
            t ^= p;
            p = mul(p, p);
        }
        // The trace lands in F_2, so t is 0 or 1 here.
        if (t > 1) throw InternalInvariantViolation("trace of a basis element is not in F_2");
        if (t) trace_mask_ |= std::uint64_t(1) << j;
    }
}

std::uint64_t Field::pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

std::uint64_t Field::inv(std::uint64_t a) const {
    if (a == 0) throw DivisionByZero("inverse of the zero element");
    return pow(a, order() - 2);
}

std::uint64_t Field::sqrt(std::uint64_t a) const {
    std::uint64_t r = a;
    for (int i = 0; i + 1 < n_; ++i) r = mul(r, r);
    return r;
}

std::vector<std::uint8_t> Field::trace_table() const {
    std::vector<std::uint8_t> t(order());
    for (std::uint64_t c = 0; c < order(); ++c)
        t[c] = static_cast<std::uint8_t>(trace(c));
    return t;
}

FieldPtr make_field(int n) { return std::make_shared<const Field>(n); }
FieldPtr make_field(int n, std::uint64_t reduction) {
    return std::make_shared<const Field>(n, reduction);
}

FieldElement::FieldElement(FieldPtr field, std::uint64_t bits)
    : field_(std::move(field)), bits_(bits) {
    if (!field_) throw InvalidArgument("element needs a field");
    if (bits_ >= field_->order()) throw InvalidArgument("element bits exceed the field size");
}

std::uint64_t FieldElement::check(const FieldElement& o) const {
    if (!field_->same_spec(*o.field_))
        throw SpecMismatch("elements belong to fields with different specs");
    return o.bits_;
}

std::vector<std::uint64_t> solve_artin_schreier(const Field& f, std::uint64_t gamma,
                                                std::uint64_t w) {
    if (gamma == 0) throw InvalidArgument("the linear coefficient must be nonzero");
    // y^2 + gamma*y = w is solvable iff trace(w / gamma^2) == 0, and then has
    // exactly two solutions differing by gamma.
    if (f.trace(f.div(w, f.sqr(gamma))) != 0) return {};
    for (std::uint64_t y = 0; y < f.order(); ++y) {
        if (f.add(f.sqr(y), f.mul(gamma, y)) == w) {
            std::uint64_t other = f.add(y, gamma);
            return {std::min(y, other), std::max(y, other)};
        }
    }
    throw InternalInvariantViolation("trace said solvable but no root was found");
}

std::vector<FieldElement> solve_artin_schreier(const FieldElement& gamma, const FieldElement& w) {
    if (!gamma.field()->same_spec(*w.field()))
        throw SpecMismatch("elements belong to fields with different specs");
    auto raw = solve_artin_schreier(*gamma.field(), gamma.bits(), w.bits());
    std::vector<FieldElement> out;
    out.reserve(raw.size());
    for (auto y : raw) out.emplace_back(gamma.field(), y);
    return out;
}

std::string to_hex(std::uint64_t bits) {
    std::ostringstream os;
    os << std::hex << bits;
    return os.str();
}

std::uint64_t parse_hex(const std::string& text) {
    std::string t = text;
    if (t.size() >= 2 && t[0] == '0' && (t[1] == 'x' || t[1] == 'X')) t = t.substr(2);
    if (t.empty()) throw InvalidArgument("empty hex string");
    std::uint64_t v = 0;
    for (char c : t) {
        int d;
        if (c >= '0' && c <= '9') d = c - '0';
        else if (c >= 'a' && c <= 'f') d = 10 + (c - 'a');
        else if (c >= 'A' && c <= 'F') d = 10 + (c - 'A');
        else throw InvalidArgument(std::string("bad hex digit '") + c + "'");
        if (v >> 60) throw InvalidArgument("hex value does not fit in 64 bits");
        v = (v << 4) | static_cast<std::uint64_t>(d);
    }
    return v;
}

} // namespace diffuni
