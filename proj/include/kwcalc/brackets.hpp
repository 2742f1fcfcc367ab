#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kwcalc/combinatorics.hpp"
#include "kwcalc/element.hpp"
#include "kwcalc/poisson.hpp"

namespace kw {

/// An n-ary bracket represented by its generator: a homogeneous element theta
/// of degree n stands for the (n-1)-argument bracket obtained by iterated
/// Poisson brackets with the arguments. Evaluation, symbol, products and
/// brackets are all derived from theta.
class MultiBracket {
public:
    /// Infers the degree from a nonzero homogeneous theta.
    explicit MultiBracket(GradedElement theta);
    /// Explicit degree, required when theta is zero.
    MultiBracket(GradedElement theta, int degree);

    /// Degree n: this is an (n-1)-argument bracket.
    int n() const { return n_; }
    int bracket_arity() const { return n_ - 1; }
    const GradedElement& theta() const { return theta_; }
    const BundleSpec& spec() const { return theta_.spec(); }
    const SpecPtr& spec_ptr() const { return theta_.spec_ptr(); }

private:
    GradedElement theta_;
    int n_;
};

/// A derivation on polynomial functions, stored by its images on the base
/// coordinates; images of a classical symbol are functions, images of an
/// extended symbol are multivectors.
struct SymbolValue {
    SpecPtr spec;
    std::vector<GradedElement> images; // size d, image on x^i

    /// Applies the derivation to a polynomial function by the Leibniz rule.
    GradedElement apply(const GradedElement& f) const;
    bool is_zero() const;
};

/// C(e_1,..,e_{n-1}) as the iterated bracket {e_{n-1},..,{e_1,theta}..}.
GradedElement kw_eval(const MultiBracket& c, const std::vector<GradedElement>& args);

/// C~(e_1,..,e_n) = <C(e_1,..,e_{n-1}), e_n>, the scalar form.
GradedElement kw_eval_tilde(const MultiBracket& c, const std::vector<GradedElement>& args);

/// Symbol on n-2 sections, by its images on the base coordinates.
SymbolValue kw_symbol(const MultiBracket& c, const std::vector<GradedElement>& args);

/// Extension to one function slot: the value is the symbol of the remaining
/// sections applied to the function, independent of the slot; two or more
/// function arguments give zero; all-section tuples fall back to kw_eval.
GradedElement extend_to_functions(const MultiBracket& c, const std::vector<GradedElement>& args);

/// Product of brackets; the generator of the result is theta1 * theta2.
MultiBracket kw_wedge(const MultiBracket& c1, const MultiBracket& c2);

/// The same product evaluated extensionally by the unshuffle sum over
/// Sh(n, m-1) and Sh(m, n-1); agrees with kw_wedge pointwise.
GradedElement kw_wedge_eval(const MultiBracket& c1, const MultiBracket& c2,
                            const std::vector<GradedElement>& args);

/// Symbol of the product, evaluated extensionally on f by the unshuffle sums
/// over Sh(n, m-2) and Sh(n-2, m).
GradedElement kw_wedge_symbol_apply(const MultiBracket& c1, const MultiBracket& c2,
                                    const std::vector<GradedElement>& args,
                                    const GradedElement& f);

/// Interior product i_{c2}c1 evaluated by the shuffle-pair sum: one term per
/// placement of the inner bracket, signed by sgn(J,I)(-1)^t.
GradedElement interior_eval(const MultiBracket& c1, const MultiBracket& c2,
                            const std::vector<GradedElement>& args);

/// The same interior product evaluated by the equivalent double sum over
/// k and Sh(k-(m-1), m-2) with sign sgn(tau)(-1)^{mk}.
GradedElement interior_eval_unshuffle(const MultiBracket& c1, const MultiBracket& c2,
                                      const std::vector<GradedElement>& args);

/// Symbol of i_{c2}c1 applied to f: a shuffle sum through the symbol of c1
/// plus a composition-of-symbols sum over Sh(n-2, m-2).
GradedElement interior_symbol_apply(const MultiBracket& c1, const MultiBracket& c2,
                                    const std::vector<GradedElement>& args,
                                    const GradedElement& f);

/// Interior product as a bracket. For an inserted section or function this is
/// a single Poisson bracket of generators; otherwise the generator is
/// recovered from pointwise values by exact linear reconstruction.
MultiBracket interior_product(const MultiBracket& c1, const MultiBracket& c2);

/// Graded bracket of brackets; the generator of the result is
/// {theta1, theta2}.
MultiBracket kw_bracket(const MultiBracket& c1, const MultiBracket& c2);

/// The same bracket evaluated extensionally as
/// i_{c1}c2 - (-1)^{nm} i_{c2}c1; requires n, m >= 1 and n+m >= 3.
GradedElement kw_bracket_eval(const MultiBracket& c1, const MultiBracket& c2,
                              const std::vector<GradedElement>& args);

/// Low-degree generator clauses: [f,g] = 0, [f,e] = 0, [e,e'] = <e,e'>,
/// [f,D] = sigma_D.f = -[D,f]. Returns the clause result when one applies
/// (n+m <= 2), built from the metric and symbol alone.
std::optional<MultiBracket> kw_bracket_clauses(const MultiBracket& c1, const MultiBracket& c2);

/// Symbolic expansion of the explicit bracket formula for generic arguments,
/// one signed term per line, e.g. "+C1(C2(e1,e2), e3)".
std::vector<std::string> kw_bracket_expansion(int n, int m);

} // namespace kw
