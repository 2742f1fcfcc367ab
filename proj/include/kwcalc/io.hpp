#pragma once

#include <string>

#include "kwcalc/table.hpp"

namespace kw {

/// Bundle text format, line oriented:
///   d = <nat>
///   r = <nat>
///   g = [ r rows of r rationals separated by spaces, rows separated by ';' ]
SpecPtr parse_bundle(const std::string& text);
SpecPtr load_bundle(const std::string& path);

/// Bracket table text format: a header `arity = n`, `D = k`, then lines
///   C(<section expr>, ...) = <section expr>
///   sigma(<section exprs>; x<i>) = <poly expr>
/// where arity = n declares an element of the degree-n component, i.e. an
/// (n-1)-argument bracket. Argument expressions must be members of the
/// generating family for D.
BracketTable parse_table(const SpecPtr& spec, const std::string& text);
BracketTable load_table(const SpecPtr& spec, const std::string& path);
std::string render_table(const BracketTable& table);

std::string read_file(const std::string& path);

} // namespace kw
