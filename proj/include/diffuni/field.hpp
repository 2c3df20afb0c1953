#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "diffuni/errors.hpp"

namespace diffuni {

// Binary field F_{2^n}. Elements are n-bit words: bit i is the coordinate of
// x^i in the power basis of F_2[x]/(reduction). All arithmetic is carry-free.
//
// The raw std::uint64_t methods are the hot path; FieldElement below wraps
// them with spec checking for API-level code.
class Field {
  public:
    // Uses the default modulus for n: the lexicographically smallest
    // irreducible polynomial of degree n, encoded as an (n+1)-bit word.
    // Supported degrees: 2 <= n <= 24.
    explicit Field(int n);

    // Explicit modulus. Must have degree exactly n (bit n set), a nonzero
    // constant term, and be irreducible over F_2; otherwise ConstructionError.
    Field(int n, std::uint64_t reduction);

    int n() const { return n_; }
    std::uint64_t order() const { return std::uint64_t(1) << n_; }
    std::uint64_t reduction() const { return reduction_; }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return a ^ b; }

    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        std::uint64_t r = 0;
        while (b) {
            if (b & 1) r ^= a;
            b >>= 1;
            a <<= 1;
            if ((a >> n_) & 1) a ^= reduction_;
        }
        return r;
    }

    std::uint64_t sqr(std::uint64_t a) const { return mul(a, a); }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;

    // Multiplicative inverse; DivisionByZero on the zero element.
    std::uint64_t inv(std::uint64_t a) const;
    std::uint64_t div(std::uint64_t a, std::uint64_t b) const { return mul(a, inv(b)); }

    // Absolute trace to F_2, returned as 0 or 1.
    std::uint64_t trace(std::uint64_t a) const {
        return static_cast<std::uint64_t>(__builtin_parityll(a & trace_mask_));
    }

    // Every element of a binary field has a unique square root: a^(2^(n-1)).
    std::uint64_t sqrt(std::uint64_t a) const;

    // trace_table()[c] == trace(c) for every element c.
    std::vector<std::uint8_t> trace_table() const;

    bool same_spec(const Field& other) const {
        return n_ == other.n_ && reduction_ == other.reduction_;
    }

    static std::uint64_t default_reduction(int n);

  private:
    void init_trace_mask();

    int n_;
    std::uint64_t reduction_;
    std::uint64_t trace_mask_; // bit j holds trace(x^j)
};

using FieldPtr = std::shared_ptr<const Field>;

FieldPtr make_field(int n);
FieldPtr make_field(int n, std::uint64_t reduction);

// Value-semantics element handle. Mixing elements from fields with different
// (n, reduction) specs throws SpecMismatch.
class FieldElement {
  public:
    FieldElement(FieldPtr field, std::uint64_t bits);

    std::uint64_t bits() const { return bits_; }
    const FieldPtr& field() const { return field_; }

    FieldElement operator+(const FieldElement& o) const { return with(bits_ ^ check(o)); }
    FieldElement operator*(const FieldElement& o) const { return with(field_->mul(bits_, check(o))); }
    FieldElement operator/(const FieldElement& o) const { return with(field_->div(bits_, check(o))); }
    FieldElement inv() const { return with(field_->inv(bits_)); }
    FieldElement sqrt() const { return with(field_->sqrt(bits_)); }
    FieldElement pow(std::uint64_t e) const { return with(field_->pow(bits_, e)); }
    std::uint64_t trace() const { return field_->trace(bits_); }

    bool operator==(const FieldElement& o) const { return bits_ == check(o); }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }
    bool is_zero() const { return bits_ == 0; }

  private:
    FieldElement with(std::uint64_t b) const { return FieldElement(field_, b); }
    std::uint64_t check(const FieldElement& o) const;

    FieldPtr field_;
    std::uint64_t bits_;
};

// Solutions y of y^2 + gamma*y = w, ascending by bit pattern. Either empty or
// exactly two values differing by gamma. gamma == 0 throws InvalidArgument.
std::vector<std::uint64_t> solve_artin_schreier(const Field& f, std::uint64_t gamma,
                                                std::uint64_t w);
std::vector<FieldElement> solve_artin_schreier(const FieldElement& gamma, const FieldElement& w);

// Hex encoding used by the CLI and tests: lowercase, no prefix, minimal width
// (zero encodes as "0").
std::string to_hex(std::uint64_t bits);
std::uint64_t parse_hex(const std::string& text);

} // namespace diffuni
