#pragma once

#include "kwcalc/element.hpp"

namespace kw {

/// Canonical Poisson bracket of degree -2. Generator table:
/// {xi^a, xi^b} = g^{ab}, {p_i, x^j} = delta_i^j, all other generator pairs
/// vanish. Extended as a graded biderivation, so {a,b} is homogeneous of
/// degree |a|+|b|-2 and {a,b} = -(-1)^{(|a|-2)(|b|-2)} {b,a}.
GradedElement pbracket(const GradedElement& a, const GradedElement& b);

/// Hamiltonian vector field of theta applied to a: {theta, a}.
GradedElement hamiltonian(const GradedElement& theta, const GradedElement& a);

/// Metric pairing of two sections, extended C-infinity-bilinearly from
/// <xi^a, xi^b> = g^{ab}. Computed from the metric alone, no bracket involved.
GradedElement section_pairing(const GradedElement& e, const GradedElement& ep);

/// Anchor and Dorfman bracket derived from a degree-3 generator:
/// rho(e).f = {f,{e,theta}} and [e,e'] = {e',{e,theta}}.
class CourantData {
public:
    explicit CourantData(GradedElement theta);

    const GradedElement& theta() const { return theta_; }
    const SpecPtr& spec_ptr() const { return theta_.spec_ptr(); }

    /// rho(e).f for a section e and a function f.
    GradedElement anchor(const GradedElement& e, const GradedElement& f) const;
    /// rho(xi^a).f for the basis section with 1-based index a.
    GradedElement anchor_basis(int a, const GradedElement& f) const;
    /// Dorfman bracket [e, e'].
    GradedElement dorfman(const GradedElement& e, const GradedElement& ep) const;

private:
    GradedElement theta_;
};

CourantData derived_courant(const GradedElement& theta);

} // namespace kw
