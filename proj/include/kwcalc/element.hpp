#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kwcalc/bundle.hpp"
#include "kwcalc/monomial.hpp"

namespace kw {

enum class CoordKind { X, Xi, P };

/// One coordinate factor as written by the user, 1-based index.
struct Factor {
    CoordKind kind;
    int index;
};

/// Element of the graded commutative algebra of polynomial functions in
/// x (degree 0), xi (degree 1, odd) and p (degree 2). Immutable value type in
/// canonical normal form: no zero coefficients, odd factors sorted, terms
/// ordered by the term order.
class GradedElement {
public:
    static GradedElement zero(SpecPtr spec) { return GradedElement(std::move(spec)); }
    static GradedElement constant(SpecPtr spec, const Rational& c);
    /// Coordinate by kind and 1-based index; validates the index range.
    static GradedElement coordinate(SpecPtr spec, CoordKind kind, int index);
    static GradedElement from_monomial(SpecPtr spec, Monomial m, const Rational& c);
    static GradedElement from_terms(SpecPtr spec, TermMap terms);

    const BundleSpec& spec() const { return *spec_; }
    const SpecPtr& spec_ptr() const { return spec_; }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_homogeneous() const;
    /// Degree of a nonzero homogeneous element; throws otherwise.
    int degree() const;
    /// Largest total x-degree over all terms (0 for the zero element).
    int max_x_degree() const;

    std::map<int, GradedElement> degree_decompose() const;
    GradedElement component(int degree) const;

    bool is_function() const;     // only degree-0 terms
    bool is_section() const;      // homogeneous of degree 1 (zero counts)
    bool is_multivector() const;  // no p factor in any term

    GradedElement operator-() const;
    GradedElement operator+(const GradedElement& o) const;
    GradedElement operator-(const GradedElement& o) const;
    GradedElement operator*(const GradedElement& o) const;
    GradedElement operator*(const Rational& c) const;
    friend GradedElement operator*(const Rational& c, const GradedElement& e) { return e * c; }

    /// Partial derivative in x^i / p_i, 0-based index. Both variables are
    /// even, so no Koszul signs arise.
    GradedElement dx(int i) const;
    GradedElement dp(int i) const;

    /// Coefficient in front of a monomial (zero if absent).
    Rational coeff(const Monomial& m) const;

    /// Canonical text rendering, e.g. "-1/2*x1*xi1*xi2 + p1"; "0" when zero.
    std::string str() const;

    bool operator==(const GradedElement& o) const;
    bool operator!=(const GradedElement& o) const { return !(*this == o); }

private:
    explicit GradedElement(SpecPtr spec) : spec_(std::move(spec)) {}

    SpecPtr spec_;
    TermMap terms_;
};

/// Canonical normal form of a raw sum of coefficient * unordered factor lists.
/// Odd factors are sorted with the Koszul sign, repeated odd factors annihilate
/// the term, zero coefficients are dropped. Throws on out-of-range indices.
GradedElement normalize(const SpecPtr& spec,
                        const std::vector<std::pair<Rational, std::vector<Factor>>>& raw);

/// Renders one monomial without coefficient, factors as x1, xi3, p2^2 joined by '*'.
std::string monomial_str(const Monomial& m);

/// All monomials of the given degree with total x-degree at most max_x_degree,
/// in canonical term order.
std::vector<Monomial> monomials_of_degree(const BundleSpec& spec, int degree, int max_x_degree);

/// The generating family of monomial sections x^alpha xi^a with |alpha| <= D,
/// in canonical term order.
std::vector<GradedElement> monomial_sections(const SpecPtr& spec, int D);

} // namespace kw
