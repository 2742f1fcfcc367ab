#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "kwcalc/rational.hpp"

namespace kw {

/// One monomial x^alpha xi_A p^beta. Odd factors are kept as a strictly
/// increasing 0-based index list; any sign from sorting lives in the
/// coefficient, never here. Degrees: x contributes 0, xi 1, p 2.
struct Monomial {
    std::vector<std::uint32_t> x;  // exponents, size d
    std::vector<int> xi;           // strictly increasing, 0-based
    std::vector<std::uint32_t> p;  // exponents, size d

    int degree() const {
        int s = 0;
        for (auto e : p) s += 2 * static_cast<int>(e);
        return s + static_cast<int>(xi.size());
    }
    int parity() const { return degree() & 1; }
    int x_degree() const {
        int s = 0;
        for (auto e : x) s += static_cast<int>(e);
        return s;
    }
    bool has_p() const {
        for (auto e : p)
            if (e) return true;
        return false;
    }
    bool is_constant() const { return x_degree() == 0 && degree() == 0; }

    bool operator==(const Monomial&) const = default;
};

/// Term order: graded, then p-exponents lex, xi-index list lex, x-exponents lex.
struct MonomialOrder {
    bool operator()(const Monomial& a, const Monomial& b) const {
        int da = a.degree(), db = b.degree();
        if (da != db) return da < db;
        if (a.p != b.p) return a.p < b.p;
        if (a.xi != b.xi) return a.xi < b.xi;
        return a.x < b.x;
    }
};

using TermMap = std::map<Monomial, Rational, MonomialOrder>;

/// Product of monomials; false when a repeated odd factor kills the term,
/// otherwise fills `out` and the Koszul sign from interleaving the odd lists.
bool mul_monomials(const Monomial& a, const Monomial& b, Monomial& out, int& sign);

} // namespace kw
