#pragma once

#include <string>
#include <vector>

#include "kwcalc/element.hpp"

namespace kw {

/// Expression tree for the grammar
///   expr   := term (('+'|'-') term)*
///   term   := sign? factor ('*' factor)*
///   factor := atom ('^' nat)?
///   atom   := rational | x<nat> | xi<nat> | p<nat> | '(' expr ')'
/// with insignificant whitespace and rationals written nat or nat/nat.
struct Ast {
    enum class Kind { Sum, Term, Power, Number, Coord };

    Kind kind = Kind::Number;
    std::vector<Ast> children; // Sum: terms; Term: factors; Power: base
    std::vector<int> signs;    // Sum: sign per term
    int sign = 1;              // Term: leading sign
    Rational number;           // Number
    CoordKind coord_kind = CoordKind::X;
    int coord_index = 0;       // Coord, 1-based
    unsigned exponent = 1;     // Power
    std::size_t pos = 0;       // source position of the node
};

/// Parses an expression; throws ParseError with the offending position.
Ast parse(const std::string& text);

/// Evaluates the tree over a bundle; index range violations name the token.
GradedElement to_element(const Ast& ast, const SpecPtr& spec);

GradedElement parse_element(const SpecPtr& spec, const std::string& text);

} // namespace kw
