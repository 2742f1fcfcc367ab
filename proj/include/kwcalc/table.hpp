#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kwcalc/brackets.hpp"

namespace kw {

/// Extensional form of a bracket: its values and symbol images on the
/// generating family of monomial sections x^alpha xi^a with |alpha| <= D.
/// n is the degree of the generator being represented, so value tuples have
/// n-1 entries and symbol tuples n-2.
struct BracketTable {
    SpecPtr spec;
    int n = 0;
    int D = 0;
    std::vector<GradedElement> family; // canonical order
    std::map<std::vector<int>, GradedElement> values;
    std::map<std::pair<std::vector<int>, int>, GradedElement> symbols; // (tuple, x-index)

    const GradedElement& value(const std::vector<int>& key) const;
    const GradedElement& symbol(const std::vector<int>& key, int xindex) const;
    /// Human-readable name of a tuple, e.g. "(xi1, x1*xi2)".
    std::string tuple_str(const std::vector<int>& key) const;
};

/// Full table of a bracket over the generating family with bound D.
BracketTable table_from_theta(const MultiBracket& c, int D);

/// Recovers the generator from a complete table by exact Gaussian elimination
/// over the rationals. Throws TableError when no generator reproduces the
/// table (carrying the violated relation) or when D is too small to pin the
/// generator down.
MultiBracket theta_from_table(const BracketTable& table);

} // namespace kw
