#pragma once

// Closure-scan oracle for the Morse property, independent of the resultant
// and characteristic-polynomial route in the library. Critical points of g
// are the roots of the square root h of the first Hasse derivative (which
// has only even exponents in characteristic 2). All roots of h lie in small
// extensions of the base field, and every extension F_2^s with s dividing 24
// embeds in F_2^24, so one big field hosts the whole scan. The oracle
// enumerates the union of those subfields through a generator of the
// multiplicative group, finds the critical points directly, and rechecks the
// nondegeneracy and distinct-critical-value conditions pointwise. It refuses
// (returns nullopt) if the roots do not fully split over the scanned union.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "diffuni/poly.hpp"

namespace oracle {

struct MorseOracle {
    diffuni::FieldPtr big = diffuni::make_field(24);
    std::uint64_t gen = 0;
    std::vector<std::uint64_t> subfield_union; // for the current base n
    std::vector<std::uint64_t> embed;          // base element bits -> image in big
    int base_n = 0;
    std::uint64_t base_red = 0;

    MorseOracle() {
        const std::uint64_t group = (std::uint64_t(1) << 24) - 1;
        const std::uint64_t primes[] = {3, 5, 7, 13, 17, 241};
        for (std::uint64_t c = 2;; ++c) {
            bool ok = true;
            for (auto p : primes)
                if (big->pow(c, group / p) == 1) { ok = false; break; }
            if (ok) { gen = c; break; }
        }
    }

    void set_base(const diffuni::Field& base) {
        if (base.n() == base_n && base.reduction() == base_red) return;
        base_n = base.n();
        base_red = base.reduction();
        const std::uint64_t group = (std::uint64_t(1) << 24) - 1;
        std::set<std::uint64_t> uni{0};
        for (int s : {2, 3, 4, 6, 8, 12}) {
            if (s % base_n != 0) continue;
            const std::uint64_t sub = (std::uint64_t(1) << s) - 1;
            std::uint64_t step_el = big->pow(gen, group / sub);
            std::uint64_t cur = 1;
            for (std::uint64_t j = 0; j < sub; ++j) {
                uni.insert(cur);
                cur = big->mul(cur, step_el);
            }
        }
        subfield_union.assign(uni.begin(), uni.end());

        // root of the base reduction polynomial inside the size-2^n subfield
        std::uint64_t red = base.reduction();
        std::uint64_t root = 0;
        bool found = false;
        for (auto cand : subfield_union) {
            std::uint64_t acc = 0, pw = 1;
            for (int i = 0; i <= base_n; ++i) {
                if ((red >> i) & 1) acc ^= pw;
                pw = big->mul(pw, cand);
            }
            if (acc == 0) { root = cand; found = true; break; }
        }
        if (!found) throw diffuni::InternalInvariantViolation("no embedding root");
        embed.assign(base.order(), 0);
        std::uint64_t pw = 1;
        for (int i = 0; i < base_n; ++i) {
            for (std::uint64_t a = 0; a < base.order(); ++a)
                if ((a >> i) & 1) embed[a] ^= pw;
            pw = big->mul(pw, root);
        }
    }

    std::vector<std::uint64_t> map_up(const diffuni::Poly& f) const {
        std::vector<std::uint64_t> out;
        for (auto c : f.coeffs()) out.push_back(embed[c]);
        return out;
    }

    static std::uint64_t eval(const diffuni::Field& F,
                              const std::vector<std::uint64_t>& c, std::uint64_t x) {
        std::uint64_t acc = 0;
        for (std::size_t i = c.size(); i-- > 0;) acc = F.mul(acc, x) ^ c[i];
        return acc;
    }

    // true / false when conclusive; nullopt when some root escapes the scan.
    std::optional<bool> is_morse(const diffuni::Poly& g) {
        using namespace diffuni;
        if (g.degree() < 1) return std::nullopt;
        if (g.degree() % 2 == 0) return false; // condition C
        set_base(*g.field());

        Poly g1 = hasse_derivative(g, 1);
        Poly g2 = hasse_derivative(g, 2);
        // g1 has only even exponents; take its coefficientwise square root
        std::vector<std::uint64_t> hc;
        for (int i = 0; i <= g1.degree(); i += 2)
            hc.push_back(g.field()->sqrt(g1.coeff(i)));
        Poly h(g.field(), std::move(hc));
        if (poly_mul(h, h) != g1)
            throw InternalInvariantViolation("derivative is not a perfect square");

        auto hb = map_up(h);
        auto g1b = map_up(g1);
        auto g2b = map_up(g2);
        auto gb = map_up(g);

        std::vector<std::uint64_t> crit;
        for (auto th : subfield_union)
            if (eval(*big, hb, th) == 0) crit.push_back(th);

        // completeness certificate: h must fully split over the scanned union
        std::vector<std::uint64_t> rem = hb;
        for (auto th : crit) {
            for (;;) {
                // synthetic division of rem by (x - th)
                std::vector<std::uint64_t> quo(rem.size() > 0 ? rem.size() - 1 : 0, 0);
                std::uint64_t carry = 0;
                for (std::size_t i = rem.size(); i-- > 1;) {
                    carry = rem[i] ^ big->mul(carry, th);
                    quo[i - 1] = carry;
                }
                std::uint64_t remainder = rem[0] ^ big->mul(carry, th);
                if (remainder != 0) break;
                rem = quo;
                if (rem.size() <= 1) break;
            }
            if (rem.size() <= 1) break;
        }
        if (rem.size() > 1) return std::nullopt; // inconclusive scan

        for (auto th : crit) {
            if (eval(*big, g1b, th) != 0)
                throw InternalInvariantViolation("h root is not a derivative root");
            if (eval(*big, g2b, th) == 0) return false; // condition A
        }
        std::set<std::uint64_t> values;
        for (auto th : crit)
            if (!values.insert(eval(*big, gb, th)).second) return false; // condition B
        return true;
    }
};

} // namespace oracle
