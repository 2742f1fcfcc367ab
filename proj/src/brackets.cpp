#include "kwcalc/brackets.hpp"

#include <algorithm>
#include <sstream>

#include "kwcalc/errors.hpp"
#include "kwcalc/table.hpp"

namespace kw {

namespace {

void require_sections(const std::vector<GradedElement>& args) {
    for (const auto& e : args)
        if (!e.is_section()) throw Error("argument must be a section: " + e.str());
}

void require_count(const std::vector<GradedElement>& args, int want, const char* what) {
    if (static_cast<int>(args.size()) != want)
        throw Error(std::string(what) + ": expected " + std::to_string(want) +
                    " arguments, got " + std::to_string(args.size()));
}

std::vector<GradedElement> pick(const std::vector<GradedElement>& args,
                                const std::vector<int>& perm, int from, int to) {
    std::vector<GradedElement> out;
    out.reserve(static_cast<std::size_t>(to - from));
    for (int k = from; k < to; ++k) out.push_back(args[static_cast<std::size_t>(perm[k])]);
    return out;
}

int pow_sign(long exponent) { return (exponent & 1) ? -1 : 1; }

} // namespace

MultiBracket::MultiBracket(GradedElement theta) : theta_(std::move(theta)), n_(0) {
    if (theta_.is_zero())
        throw Error("degree of a zero generator is ambiguous, pass it explicitly");
    if (!theta_.is_homogeneous()) throw Error("generator must be homogeneous");
    n_ = theta_.degree();
}

MultiBracket::MultiBracket(GradedElement theta, int degree) : theta_(std::move(theta)), n_(degree) {
    if (n_ < 0) throw Error("generator degree must be >= 0");
    if (!theta_.is_zero() && (!theta_.is_homogeneous() || theta_.degree() != n_))
        throw Error("generator is not homogeneous of the stated degree");
}

GradedElement SymbolValue::apply(const GradedElement& f) const {
    if (!f.is_function()) throw Error("symbol applies to functions only");
    GradedElement out = GradedElement::zero(spec);
    for (std::size_t i = 0; i < images.size(); ++i)
        out = out + f.dx(static_cast<int>(i)) * images[i];
    return out;
}

bool SymbolValue::is_zero() const {
    for (const auto& img : images)
        if (!img.is_zero()) return false;
    return true;
}

GradedElement kw_eval(const MultiBracket& c, const std::vector<GradedElement>& args) {
    require_count(args, c.n() - 1, "bracket evaluation");
    require_sections(args);
    GradedElement acc = c.theta();
    for (const auto& e : args) acc = pbracket(e, acc);
    return acc;
}

GradedElement kw_eval_tilde(const MultiBracket& c, const std::vector<GradedElement>& args) {
    require_count(args, c.n(), "scalar bracket evaluation");
    require_sections(args);
    GradedElement acc = c.theta();
    for (const auto& e : args) acc = pbracket(e, acc);
    return acc;
}

SymbolValue kw_symbol(const MultiBracket& c, const std::vector<GradedElement>& args) {
    const int d = c.spec().base_dim();
    SymbolValue sym;
    sym.spec = c.spec_ptr();
    if (c.n() <= 1) {
        require_count(args, 0, "symbol");
        sym.images.assign(static_cast<std::size_t>(d), GradedElement::zero(c.spec_ptr()));
        return sym;
    }
    require_count(args, c.n() - 2, "symbol");
    require_sections(args);
    GradedElement acc = c.theta();
    for (const auto& e : args) acc = pbracket(e, acc);
    sym.images.reserve(static_cast<std::size_t>(d));
    for (int i = 1; i <= d; ++i) {
        GradedElement xi = GradedElement::coordinate(c.spec_ptr(), CoordKind::X, i);
        sym.images.push_back(pbracket(xi, acc));
    }
    return sym;
}

GradedElement extend_to_functions(const MultiBracket& c, const std::vector<GradedElement>& args) {
    require_count(args, c.n() - 1, "extended evaluation");
    std::vector<GradedElement> sections;
    std::vector<GradedElement> functions;
    for (const auto& a : args) {
        if (a.is_zero() || a.is_section()) {
            sections.push_back(a);
        } else if (a.is_function()) {
            functions.push_back(a);
        } else {
            throw Error("argument must be a section or a function: " + a.str());
        }
    }
    if (functions.empty()) return kw_eval(c, args);
    if (functions.size() >= 2) return GradedElement::zero(c.spec_ptr());
    return kw_symbol(c, sections).apply(functions.front());
}

MultiBracket kw_wedge(const MultiBracket& c1, const MultiBracket& c2) {
    if (!same_spec(c1.spec_ptr(), c2.spec_ptr()))
        throw Error("product arguments live over different bundles");
    return MultiBracket(c1.theta() * c2.theta(), c1.n() + c2.n());
}

GradedElement kw_wedge_eval(const MultiBracket& c1, const MultiBracket& c2,
                            const std::vector<GradedElement>& args) {
    if (!same_spec(c1.spec_ptr(), c2.spec_ptr()))
        throw Error("product arguments live over different bundles");
    const int n = c1.n(), m = c2.n();
    if (n == 0) return c1.theta() * kw_eval(c2, args);
    if (m == 0) return c2.theta() * kw_eval(c1, args);
    require_count(args, n + m - 1, "product evaluation");
    require_sections(args);
    GradedElement acc = GradedElement::zero(c1.spec_ptr());
    for (const auto& tau : unshuffles(n, m - 1)) {
        GradedElement scalar = kw_eval_tilde(c1, pick(args, tau.perm, 0, n));
        GradedElement rest = kw_eval(c2, pick(args, tau.perm, n, n + m - 1));
        GradedElement term = scalar * rest;
        acc = (tau.sign > 0) ? acc + term : acc - term;
    }
    const int cross = pow_sign(static_cast<long>(n) * m);
    for (const auto& tau : unshuffles(m, n - 1)) {
        GradedElement scalar = kw_eval_tilde(c2, pick(args, tau.perm, 0, m));
        GradedElement rest = kw_eval(c1, pick(args, tau.perm, m, n + m - 1));
        GradedElement term = scalar * rest;
        acc = (cross * tau.sign > 0) ? acc + term : acc - term;
    }
    return acc;
}

GradedElement kw_wedge_symbol_apply(const MultiBracket& c1, const MultiBracket& c2,
                                    const std::vector<GradedElement>& args,
                                    const GradedElement& f) {
    const int n = c1.n(), m = c2.n();
    require_count(args, std::max(n + m - 2, 0), "product symbol");
    require_sections(args);
    GradedElement acc = GradedElement::zero(c1.spec_ptr());
    if (m >= 2) {
        for (const auto& tau : unshuffles(n, m - 2)) {
            GradedElement scalar = kw_eval_tilde(c1, pick(args, tau.perm, 0, n));
            GradedElement rest = kw_symbol(c2, pick(args, tau.perm, n, n + m - 2)).apply(f);
            GradedElement term = scalar * rest;
            acc = (tau.sign > 0) ? acc + term : acc - term;
        }
    }
    if (n >= 2) {
        for (const auto& tau : unshuffles(n - 2, m)) {
            GradedElement scalar = kw_symbol(c1, pick(args, tau.perm, 0, n - 2)).apply(f);
            GradedElement rest = kw_eval_tilde(c2, pick(args, tau.perm, n - 2, n + m - 2));
            GradedElement term = scalar * rest;
            acc = (tau.sign > 0) ? acc + term : acc - term;
        }
    }
    return acc;
}

GradedElement interior_eval(const MultiBracket& c1, const MultiBracket& c2,
                            const std::vector<GradedElement>& args) {
    if (!same_spec(c1.spec_ptr(), c2.spec_ptr()))
        throw Error("interior product arguments live over different bundles");
    const int n = c1.n(), m = c2.n();
    if (m == 0) {
        // inserted function: generator route through {f, theta}
        MultiBracket res(pbracket(c2.theta(), c1.theta()), std::max(n - 2, 0));
        return kw_eval(res, args);
    }
    if (m == 1) {
        if (n == 0) {
            require_count(args, 0, "interior product");
            return GradedElement::zero(c1.spec_ptr());
        }
        if (n == 1) {
            require_count(args, 0, "interior product");
            return section_pairing(c2.theta(), c1.theta());
        }
        std::vector<GradedElement> full;
        full.reserve(args.size() + 1);
        full.push_back(c2.theta());
        full.insert(full.end(), args.begin(), args.end());
        return kw_eval(c1, full);
    }
    const int total = n + m - 3;
    if (n <= 1) {
        require_count(args, std::max(n + m - 3, 0), "interior product");
        return GradedElement::zero(c1.spec_ptr());
    }
    require_count(args, total, "interior product");
    require_sections(args);
    GradedElement acc = GradedElement::zero(c1.spec_ptr());
    for (const auto& I : subsets(total, n - 2)) {
        std::vector<int> J;
        std::vector<bool> in_I(static_cast<std::size_t>(total), false);
        for (int v : I) in_I[static_cast<std::size_t>(v)] = true;
        for (int v = 0; v < total; ++v)
            if (!in_I[static_cast<std::size_t>(v)]) J.push_back(v);
        // t = number of outer slots before the inner bracket; with j_{m-1}
        // the largest element of J (1-based), t = j_{m-1} - m + 1.
        const int t = J.back() + 2 - m;
        std::vector<int> seq = J;
        seq.insert(seq.end(), I.begin(), I.end());
        const int sgn_ji = permutation_sign(seq);
        std::vector<GradedElement> inner_args;
        inner_args.reserve(J.size());
        for (int v : J) inner_args.push_back(args[static_cast<std::size_t>(v)]);
        GradedElement inner = kw_eval(c2, inner_args);
        std::vector<GradedElement> outer;
        outer.reserve(static_cast<std::size_t>(n - 1));
        for (int k = 0; k < t; ++k) outer.push_back(args[static_cast<std::size_t>(I[static_cast<std::size_t>(k)])]);
        outer.push_back(inner);
        for (int k = t; k < n - 2; ++k) outer.push_back(args[static_cast<std::size_t>(I[static_cast<std::size_t>(k)])]);
        GradedElement term = kw_eval(c1, outer);
        acc = (sgn_ji * pow_sign(t) > 0) ? acc + term : acc - term;
    }
    return acc;
}

GradedElement interior_eval_unshuffle(const MultiBracket& c1, const MultiBracket& c2,
                                      const std::vector<GradedElement>& args) {
    const int n = c1.n(), m = c2.n();
    if (m <= 1 || n <= 1) return interior_eval(c1, c2, args);
    const int total = n + m - 3;
    require_count(args, total, "interior product");
    require_sections(args);
    GradedElement acc = GradedElement::zero(c1.spec_ptr());
    for (int k = m - 1; k <= total; ++k) {
        const int sign_mk = pow_sign(static_cast<long>(m) * k);
        for (const auto& tau : unshuffles(k - (m - 1), m - 2)) {
            std::vector<GradedElement> inner_args = pick(args, tau.perm, k - m + 1, k - 1);
            inner_args.push_back(args[static_cast<std::size_t>(k - 1)]);
            GradedElement inner = kw_eval(c2, inner_args);
            std::vector<GradedElement> outer = pick(args, tau.perm, 0, k - m + 1);
            outer.push_back(inner);
            for (int v = k; v < total; ++v) outer.push_back(args[static_cast<std::size_t>(v)]);
            GradedElement term = kw_eval(c1, outer);
            acc = (sign_mk * tau.sign > 0) ? acc + term : acc - term;
        }
    }
    return acc;
}

GradedElement interior_symbol_apply(const MultiBracket& c1, const MultiBracket& c2,
                                    const std::vector<GradedElement>& args,
                                    const GradedElement& f) {
    const int n = c1.n(), m = c2.n();
    if (m == 0) {
        MultiBracket res(pbracket(c2.theta(), c1.theta()), std::max(n - 2, 0));
        return kw_symbol(res, args).apply(f);
    }
    if (m == 1) {
        if (n <= 2) return GradedElement::zero(c1.spec_ptr());
        std::vector<GradedElement> full;
        full.reserve(args.size() + 1);
        full.push_back(c2.theta());
        full.insert(full.end(), args.begin(), args.end());
        return kw_symbol(c1, full).apply(f);
    }
    if (n <= 1) return GradedElement::zero(c1.spec_ptr());
    const int total = n + m - 4;
    require_count(args, total, "interior product symbol");
    require_sections(args);
    GradedElement acc = GradedElement::zero(c1.spec_ptr());
    for (int k = m - 1; k <= total; ++k) {
        const int outer_sign = pow_sign(static_cast<long>(m) * (k - (m - 1)));
        for (const auto& tau : unshuffles(k - (m - 1), m - 2)) {
            std::vector<GradedElement> inner_args = pick(args, tau.perm, k - m + 1, k - 1);
            inner_args.push_back(args[static_cast<std::size_t>(k - 1)]);
            GradedElement inner = kw_eval(c2, inner_args);
            std::vector<GradedElement> sym_args = pick(args, tau.perm, 0, k - m + 1);
            sym_args.push_back(inner);
            for (int v = k; v < total; ++v) sym_args.push_back(args[static_cast<std::size_t>(v)]);
            GradedElement term = kw_symbol(c1, sym_args).apply(f);
            acc = (outer_sign * tau.sign > 0) ? acc + term : acc - term;
        }
    }
    const int comp_sign = pow_sign(static_cast<long>(m) * (n - 2));
    for (const auto& tau : unshuffles(n - 2, m - 2)) {
        GradedElement inner_f = kw_symbol(c2, pick(args, tau.perm, n - 2, total)).apply(f);
        GradedElement term = kw_symbol(c1, pick(args, tau.perm, 0, n - 2)).apply(inner_f);
        acc = (comp_sign * tau.sign > 0) ? acc + term : acc - term;
    }
    return acc;
}

MultiBracket interior_product(const MultiBracket& c1, const MultiBracket& c2) {
    const int n = c1.n(), m = c2.n();
    if (m <= 1) {
        // {e, theta} generates the insertion of e; likewise for a function.
        return MultiBracket(pbracket(c2.theta(), c1.theta()), std::max(n + m - 2, 0));
    }
    if (n <= 1) {
        return MultiBracket(GradedElement::zero(c1.spec_ptr()), std::max(n + m - 2, 0));
    }
    // For inner degree >= 2 the interior product alone usually fails the
    // bracket-space axioms (compose two derivative endomorphisms: the result
    // is not one); only the antisymmetrized combination is a bracket again.
    // Reconstruct a generator when the values admit one, report otherwise.
    const int D = c1.theta().max_x_degree() + c2.theta().max_x_degree();
    BracketTable table;
    table.spec = c1.spec_ptr();
    table.n = n + m - 2;
    table.D = D;
    table.family = monomial_sections(c1.spec_ptr(), D);
    const std::size_t fam = table.family.size();
    for_each_tuple(fam, static_cast<std::size_t>(table.n - 1), [&](const std::vector<std::size_t>& idx) {
        std::vector<int> key(idx.begin(), idx.end());
        std::vector<GradedElement> tuple;
        tuple.reserve(idx.size());
        for (auto i : idx) tuple.push_back(table.family[i]);
        table.values.emplace(std::move(key), interior_eval(c1, c2, tuple));
        return true;
    });
    const int d = c1.spec().base_dim();
    for_each_tuple(fam, static_cast<std::size_t>(std::max(table.n - 2, 0)),
                   [&](const std::vector<std::size_t>& idx) {
                       std::vector<int> key(idx.begin(), idx.end());
                       std::vector<GradedElement> tuple;
                       tuple.reserve(idx.size());
                       for (auto i : idx) tuple.push_back(table.family[i]);
                       for (int i = 1; i <= d; ++i) {
                           GradedElement xi =
                               GradedElement::coordinate(c1.spec_ptr(), CoordKind::X, i);
                           table.symbols.emplace(std::make_pair(key, i - 1),
                                                 interior_symbol_apply(c1, c2, tuple, xi));
                       }
                       return true;
                   });
    try {
        return theta_from_table(table);
    } catch (const TableError& e) {
        throw Error(std::string("interior product admits no generator here: ") + e.what());
    }
}

MultiBracket kw_bracket(const MultiBracket& c1, const MultiBracket& c2) {
    if (!same_spec(c1.spec_ptr(), c2.spec_ptr()))
        throw Error("bracket arguments live over different bundles");
    return MultiBracket(pbracket(c1.theta(), c2.theta()), std::max(c1.n() + c2.n() - 2, 0));
}

GradedElement kw_bracket_eval(const MultiBracket& c1, const MultiBracket& c2,
                              const std::vector<GradedElement>& args) {
    const int n = c1.n(), m = c2.n();
    if (n < 1 || m < 1 || n + m < 3)
        throw Error("explicit bracket formula needs degrees n, m >= 1 with n+m >= 3");
    GradedElement a = interior_eval(c2, c1, args); // i_{C1}C2
    GradedElement b = interior_eval(c1, c2, args); // i_{C2}C1
    return (pow_sign(static_cast<long>(n) * m) > 0) ? a - b : a + b;
}

std::optional<MultiBracket> kw_bracket_clauses(const MultiBracket& c1, const MultiBracket& c2) {
    const int n = c1.n(), m = c2.n();
    const SpecPtr& spec = c1.spec_ptr();
    if (n + m > 2) return std::nullopt;
    if (n == 1 && m == 1)
        return MultiBracket(section_pairing(c1.theta(), c2.theta()), 0);
    if (n == 0 && m == 2)
        return MultiBracket(kw_symbol(c2, {}).apply(c1.theta()), 0);
    if (n == 2 && m == 0)
        return MultiBracket(-kw_symbol(c1, {}).apply(c2.theta()), 0);
    // [f,g], [f,e], [e,f]
    return MultiBracket(GradedElement::zero(spec), 0);
}

std::vector<std::string> kw_bracket_expansion(int n, int m) {
    if (n < 2 || m < 2) throw Error("expansion is printed for degrees n, m >= 2");
    const int total = n + m - 3;
    auto emit_half = [&](const char* outer, const char* inner, int deg_outer, int deg_inner,
                         int coeff) {
        // terms of i_{inner}outer, ordered by (t, I)
        struct Term {
            int t;
            std::vector<int> I;
            std::string text;
            int sign;
        };
        std::vector<Term> terms;
        for (const auto& I : subsets(total, deg_outer - 2)) {
            std::vector<int> J;
            std::vector<bool> in_I(static_cast<std::size_t>(total), false);
            for (int v : I) in_I[static_cast<std::size_t>(v)] = true;
            for (int v = 0; v < total; ++v)
                if (!in_I[static_cast<std::size_t>(v)]) J.push_back(v);
            const int t = J.back() + 2 - deg_inner;
            std::vector<int> seq = J;
            seq.insert(seq.end(), I.begin(), I.end());
            int sign = permutation_sign(seq) * pow_sign(t) * coeff;
            std::ostringstream os;
            os << outer << '(';
            bool first = true;
            auto arg = [&](const std::string& s) {
                if (!first) os << ", ";
                first = false;
                os << s;
            };
            for (int k = 0; k < t; ++k) arg("e" + std::to_string(I[static_cast<std::size_t>(k)] + 1));
            {
                std::ostringstream in;
                in << inner << '(';
                for (std::size_t j = 0; j < J.size(); ++j) {
                    if (j) in << ", ";
                    in << 'e' << J[j] + 1;
                }
                in << ')';
                arg(in.str());
            }
            for (int k = t; k < deg_outer - 2; ++k)
                arg("e" + std::to_string(I[static_cast<std::size_t>(k)] + 1));
            os << ')';
            terms.push_back({t, I, os.str(), sign});
        }
        std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
            if (a.t != b.t) return a.t < b.t;
            return a.I < b.I;
        });
        std::vector<std::string> out;
        for (const auto& tm : terms)
            out.push_back((tm.sign > 0 ? std::string("+") : std::string("-")) + tm.text);
        return out;
    };
    // [C1,C2] = i_{C1}C2 - (-1)^{nm} i_{C2}C1; C1-receiving terms first.
    const int c1_coeff = -pow_sign(static_cast<long>(n) * m);
    std::vector<std::string> out = emit_half("C1", "C2", n, m, c1_coeff);
    std::vector<std::string> second = emit_half("C2", "C1", m, n, 1);
    out.insert(out.end(), second.begin(), second.end());
    return out;
}

} // namespace kw
