#include "kwcalc/table.hpp"

#include <sstream>

#include "kwcalc/errors.hpp"

namespace kw {

const GradedElement& BracketTable::value(const std::vector<int>& key) const {
    auto it = values.find(key);
    if (it == values.end()) throw TableError("table is missing entry C" + tuple_str(key));
    return it->second;
}

const GradedElement& BracketTable::symbol(const std::vector<int>& key, int xindex) const {
    auto it = symbols.find({key, xindex});
    if (it == symbols.end())
        throw TableError("table is missing entry sigma" + tuple_str(key) + " on x" +
                         std::to_string(xindex + 1));
    return it->second;
}

std::string BracketTable::tuple_str(const std::vector<int>& key) const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < key.size(); ++i) {
        if (i) os << ", ";
        os << family[static_cast<std::size_t>(key[i])].str();
    }
    os << ')';
    return os.str();
}

BracketTable table_from_theta(const MultiBracket& c, int D) {
    BracketTable t;
    t.spec = c.spec_ptr();
    t.n = c.n();
    t.D = D;
    t.family = monomial_sections(c.spec_ptr(), D);
    const std::size_t fam = t.family.size();
    const int d = c.spec().base_dim();
    for_each_tuple(fam, static_cast<std::size_t>(std::max(t.n - 1, 0)),
                   [&](const std::vector<std::size_t>& idx) {
                       std::vector<int> key(idx.begin(), idx.end());
                       std::vector<GradedElement> tuple;
                       for (auto i : idx) tuple.push_back(t.family[i]);
                       t.values.emplace(std::move(key), kw_eval(c, tuple));
                       return true;
                   });
    if (t.n >= 2) {
        for_each_tuple(fam, static_cast<std::size_t>(t.n - 2),
                       [&](const std::vector<std::size_t>& idx) {
                           std::vector<int> key(idx.begin(), idx.end());
                           std::vector<GradedElement> tuple;
                           for (auto i : idx) tuple.push_back(t.family[i]);
                           SymbolValue sym = kw_symbol(c, tuple);
                           for (int i = 0; i < d; ++i)
                               t.symbols.emplace(std::make_pair(key, i),
                                                 sym.images[static_cast<std::size_t>(i)]);
                           return true;
                       });
    }
    return t;
}

namespace {

struct Equation {
    std::vector<Rational> lhs; // one column per candidate monomial
    Rational rhs;
    std::string label;
};

} // namespace

MultiBracket theta_from_table(const BracketTable& table) {
    const SpecPtr& spec = table.spec;
    if (!spec) throw TableError("table has no bundle");
    if (table.n < 0) throw TableError("table degree must be >= 0");

    // Completeness over the generating family.
    const std::size_t fam = table.family.size();
    for_each_tuple(fam, static_cast<std::size_t>(std::max(table.n - 1, 0)),
                   [&](const std::vector<std::size_t>& idx) {
                       std::vector<int> key(idx.begin(), idx.end());
                       (void)table.value(key);
                       return true;
                   });

    const std::vector<Monomial> candidates = monomials_of_degree(*spec, table.n, table.D);
    const std::size_t cols = candidates.size();
    std::vector<MultiBracket> gens;
    gens.reserve(cols);
    for (const Monomial& mu : candidates)
        gens.emplace_back(GradedElement::from_monomial(spec, mu, Rational(1)), table.n);

    // Pivot rows in insertion order; pivot_col[i] is the leading column of row i.
    std::vector<Equation> pivots;
    std::vector<std::size_t> pivot_col;
    std::vector<std::size_t> col_pivot(cols, SIZE_MAX);

    auto reduce_and_insert = [&](Equation eq) -> void {
        for (std::size_t c = 0; c < cols; ++c) {
            if (eq.lhs[c].is_zero()) continue;
            const std::size_t pr = col_pivot[c];
            if (pr == SIZE_MAX) {
                // normalize and store as a new pivot
                Rational inv_lead = inverse(eq.lhs[c]);
                for (std::size_t k = c; k < cols; ++k) eq.lhs[k] *= inv_lead;
                eq.rhs *= inv_lead;
                col_pivot[c] = pivots.size();
                pivot_col.push_back(c);
                pivots.push_back(std::move(eq));
                return;
            }
            Rational f = eq.lhs[c];
            const Equation& p = pivots[pr];
            for (std::size_t k = c; k < cols; ++k) eq.lhs[k] -= f * p.lhs[k];
            eq.rhs -= f * p.rhs;
        }
        if (!eq.rhs.is_zero())
            throw TableError("table is inconsistent: no generator reproduces it; entry " +
                                 eq.label + " reduces to 0 = " + eq.rhs.str(),
                             eq.label);
    };

    auto add_element_equations = [&](const std::vector<GradedElement>& per_candidate,
                                     const GradedElement& target, const std::string& label) {
        // equate coefficients of every monomial appearing on either side
        std::map<Monomial, bool, MonomialOrder> seen;
        for (const auto& e : per_candidate)
            for (const auto& [mono, c] : e.terms()) seen.emplace(mono, true);
        for (const auto& [mono, c] : target.terms()) seen.emplace(mono, true);
        for (const auto& [mono, unused] : seen) {
            Equation eq;
            eq.lhs.reserve(cols);
            for (const auto& e : per_candidate) eq.lhs.push_back(e.coeff(mono));
            eq.rhs = target.coeff(mono);
            eq.label = label + " at " + (monomial_str(mono).empty() ? "1" : monomial_str(mono));
            reduce_and_insert(std::move(eq));
        }
    };

    // Value equations in canonical tuple order, then symbol equations.
    for (const auto& [key, target] : table.values) {
        std::vector<GradedElement> tuple;
        for (int i : key) tuple.push_back(table.family[static_cast<std::size_t>(i)]);
        std::vector<GradedElement> per_candidate;
        per_candidate.reserve(cols);
        for (const auto& g : gens) per_candidate.push_back(kw_eval(g, tuple));
        add_element_equations(per_candidate, target, "C" + table.tuple_str(key));
    }
    for (const auto& [key_pair, target] : table.symbols) {
        const auto& [key, xindex] = key_pair;
        std::vector<GradedElement> tuple;
        for (int i : key) tuple.push_back(table.family[static_cast<std::size_t>(i)]);
        std::vector<GradedElement> per_candidate;
        per_candidate.reserve(cols);
        for (const auto& g : gens)
            per_candidate.push_back(kw_symbol(g, tuple).images[static_cast<std::size_t>(xindex)]);
        add_element_equations(per_candidate, target,
                              "sigma" + table.tuple_str(key) + " on x" + std::to_string(xindex + 1));
    }

    for (std::size_t c = 0; c < cols; ++c)
        if (col_pivot[c] == SIZE_MAX)
            throw TableError(
                "table is underdetermined: degree bound D=" + std::to_string(table.D) +
                " does not pin down the coefficient of " + monomial_str(candidates[c]));

    // Back-substitution over the stored pivot rows.
    std::vector<Rational> solution(cols, Rational(0));
    for (std::size_t i = pivots.size(); i-- > 0;) {
        const std::size_t c = pivot_col[i];
        Rational v = pivots[i].rhs;
        for (std::size_t k = c + 1; k < cols; ++k)
            v -= pivots[i].lhs[k] * solution[k];
        solution[c] = v;
    }

    TermMap terms;
    for (std::size_t c = 0; c < cols; ++c)
        if (!solution[c].is_zero()) terms.emplace(candidates[c], solution[c]);
    return MultiBracket(GradedElement::from_terms(spec, std::move(terms)), table.n);
}

} // namespace kw
