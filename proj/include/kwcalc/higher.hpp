#pragma once

#include "kwcalc/brackets.hpp"

namespace kw {

/// Extended bilinear pairing on multivectors: degree -2, graded antisymmetric,
/// annihilates functions, acts as a derivation of the product. Computed by the
/// explicit double sum over factors of both arguments; agrees with pbracket
/// on multivectors.
GradedElement pairing(const GradedElement& P, const GradedElement& Q);

/// Which slot the derivation recursion expands first (leftmost or rightmost
/// eligible); the value does not depend on this choice and a test asserts it.
/// The split of the slot itself is pinned: peel the highest odd index, keep
/// the coefficient on the prefix. With a nonzero base symbol, rebalanced
/// splits of the same argument genuinely evaluate differently, so the split
/// is part of the definition rather than a free choice.
enum class PeelStrategy { Canonical, Alternative };

/// The extension by derivation in each entry of the scalar bracket of `base`:
/// an n-argument map on multivectors of degree >= 1 that coincides with
/// kw_eval_tilde on section tuples.
class HigherBracket {
public:
    explicit HigherBracket(MultiBracket base) : base_(std::move(base)) {}

    const MultiBracket& base() const { return base_; }
    int n() const { return base_.n(); }
    const BundleSpec& spec() const { return base_.spec(); }
    const SpecPtr& spec_ptr() const { return base_.spec_ptr(); }

private:
    MultiBracket base_;
};

/// Evaluation on n multivector arguments by structural recursion on the
/// argument degrees; multilinear over monomial expansions.
GradedElement bar_eval(const HigherBracket& b, const std::vector<GradedElement>& args,
                       PeelStrategy strategy = PeelStrategy::Canonical);

/// Extension by derivation of the symbol, on n-2 multivector arguments.
SymbolValue bar_symbol(const HigherBracket& b, const std::vector<GradedElement>& args,
                       PeelStrategy strategy = PeelStrategy::Canonical);

/// Product and bracket are inherited through the bases.
HigherBracket higher_wedge(const HigherBracket& a, const HigherBracket& b);
HigherBracket higher_bracket(const HigherBracket& a, const HigherBracket& b);

/// Scalar product formula: unshuffle sum of tilde values over Sh(n, m), on
/// n+m section arguments.
GradedElement tilde_wedge_eval(const MultiBracket& c1, const MultiBracket& c2,
                               const std::vector<GradedElement>& args);

} // namespace kw
