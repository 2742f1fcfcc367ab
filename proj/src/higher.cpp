#include "kwcalc/higher.hpp"

#include <functional>

#include "kwcalc/errors.hpp"

namespace kw {

namespace {

int pow_sign(long exponent) { return (exponent & 1) ? -1 : 1; }

Monomial erase_xi_at(const Monomial& m, std::size_t pos) {
    Monomial out = m;
    out.xi.erase(out.xi.begin() + static_cast<std::ptrdiff_t>(pos));
    return out;
}

/// A tuple of monomial arguments with an overall rational coefficient.
struct MonomialTuple {
    Rational coeff;
    std::vector<Monomial> monos;
};

/// Expands multilinear arguments into pure monomial tuples.
std::vector<MonomialTuple> expand(const std::vector<GradedElement>& args) {
    std::vector<MonomialTuple> tuples;
    tuples.push_back({Rational(1), {}});
    for (const auto& a : args) {
        std::vector<MonomialTuple> next;
        for (const auto& t : tuples) {
            for (const auto& [m, c] : a.terms()) {
                MonomialTuple nt = t;
                nt.coeff *= c;
                nt.monos.push_back(m);
                next.push_back(std::move(nt));
            }
        }
        tuples = std::move(next);
    }
    return tuples;
}

/// Derivation-in-each-entry recursion over a monomial tuple. `leaf` is called
/// on all-section tuples. The expanded slot is split as prefix ^ section by
/// peeling the highest odd index, keeping the x-part on the prefix: this
/// decomposition is the definition. A slot argument with a nonzero base
/// symbol evaluates differently under rebalanced decompositions, so only the
/// slot-expansion order is a free choice here.
GradedElement bar_recurse(const SpecPtr& spec, const std::vector<Monomial>& monos,
                          PeelStrategy strategy,
                          const std::function<GradedElement(const std::vector<GradedElement>&)>& leaf) {
    int slot = -1;
    if (strategy == PeelStrategy::Canonical) {
        for (std::size_t i = 0; i < monos.size(); ++i)
            if (monos[i].xi.size() >= 2) {
                slot = static_cast<int>(i);
                break;
            }
    } else {
        for (std::size_t i = monos.size(); i-- > 0;)
            if (monos[i].xi.size() >= 2) {
                slot = static_cast<int>(i);
                break;
            }
    }
    if (slot < 0) {
        std::vector<GradedElement> sections;
        sections.reserve(monos.size());
        for (const auto& m : monos)
            sections.push_back(GradedElement::from_monomial(spec, m, Rational(1)));
        return leaf(sections);
    }

    const Monomial& q = monos[static_cast<std::size_t>(slot)];
    const std::size_t k = q.xi.size();
    const std::size_t peel_pos = k - 1;
    const int decomp_sign = 1;

    Monomial prefix = erase_xi_at(q, peel_pos);
    Monomial section;
    section.x.assign(q.x.size(), 0);
    section.p.assign(q.p.size(), 0);
    section.xi.push_back(q.xi[peel_pos]);

    const int p_i = prefix.degree();
    int later = 0;
    for (std::size_t j = static_cast<std::size_t>(slot) + 1; j < monos.size(); ++j)
        later += monos[j].degree();

    std::vector<Monomial> with_section = monos;
    with_section[static_cast<std::size_t>(slot)] = section;
    std::vector<Monomial> with_prefix = monos;
    with_prefix[static_cast<std::size_t>(slot)] = prefix;

    GradedElement prefix_el = GradedElement::from_monomial(spec, prefix, Rational(1));
    GradedElement section_el = GradedElement::from_monomial(spec, section, Rational(1));

    GradedElement term1 = prefix_el * bar_recurse(spec, with_section, strategy, leaf);
    GradedElement term2 = section_el * bar_recurse(spec, with_prefix, strategy, leaf);

    const int sign1 = pow_sign(static_cast<long>(p_i) * later) * decomp_sign;
    const int sign2 = pow_sign(static_cast<long>(p_i) + later) * decomp_sign;
    GradedElement out = GradedElement::zero(spec);
    out = (sign1 > 0) ? out + term1 : out - term1;
    out = (sign2 > 0) ? out + term2 : out - term2;
    return out;
}

GradedElement bar_extend(const SpecPtr& spec, const std::vector<GradedElement>& args,
                         PeelStrategy strategy,
                         const std::function<GradedElement(const std::vector<GradedElement>&)>& leaf) {
    for (const auto& a : args) {
        if (!a.is_multivector()) throw Error("argument must be a multivector: " + a.str());
        for (const auto& [m, c] : a.terms())
            if (m.degree() < 1)
                throw Error("argument must have degree >= 1: " + a.str());
    }
    GradedElement out = GradedElement::zero(spec);
    for (const auto& t : expand(args))
        out = out + bar_recurse(spec, t.monos, strategy, leaf) * t.coeff;
    return out;
}

} // namespace

GradedElement pairing(const GradedElement& P, const GradedElement& Q) {
    if (!same_spec(P.spec_ptr(), Q.spec_ptr()))
        throw Error("pairing arguments live over different bundles");
    if (!P.is_multivector() || !Q.is_multivector())
        throw Error("pairing is defined on multivectors");
    const BundleSpec& spec = P.spec();
    GradedElement out = GradedElement::zero(P.spec_ptr());
    Monomial prod;
    int msign = 1;
    for (const auto& [mp, cp] : P.terms()) {
        const int p = static_cast<int>(mp.xi.size());
        for (const auto& [mq, cq] : Q.terms()) {
            const int q = static_cast<int>(mq.xi.size());
            if (p == 0 || q == 0) continue; // functions pair to zero
            for (int k = 1; k <= p; ++k) {
                for (int s = 1; s <= q; ++s) {
                    const Rational& g = spec.pairing(mp.xi[static_cast<std::size_t>(k - 1)],
                                                     mq.xi[static_cast<std::size_t>(s - 1)]);
                    if (g.is_zero()) continue;
                    Monomial rp = erase_xi_at(mp, static_cast<std::size_t>(k - 1));
                    Monomial rq = erase_xi_at(mq, static_cast<std::size_t>(s - 1));
                    if (!mul_monomials(rp, rq, prod, msign)) continue;
                    int sign = pow_sign(k - s + p + 1) * msign;
                    Rational c = cp * cq * g;
                    if (sign < 0) c = -c;
                    out = out + GradedElement::from_monomial(P.spec_ptr(), prod, c);
                }
            }
        }
    }
    return out;
}

GradedElement bar_eval(const HigherBracket& b, const std::vector<GradedElement>& args,
                       PeelStrategy strategy) {
    if (static_cast<int>(args.size()) != b.n())
        throw Error("extension evaluation: expected " + std::to_string(b.n()) +
                    " arguments, got " + std::to_string(args.size()));
    const MultiBracket& base = b.base();
    return bar_extend(b.spec_ptr(), args, strategy,
                      [&](const std::vector<GradedElement>& sections) {
                          return kw_eval_tilde(base, sections);
                      });
}

SymbolValue bar_symbol(const HigherBracket& b, const std::vector<GradedElement>& args,
                       PeelStrategy strategy) {
    if (static_cast<int>(args.size()) != std::max(b.n() - 2, 0))
        throw Error("extension symbol: expected " + std::to_string(std::max(b.n() - 2, 0)) +
                    " arguments, got " + std::to_string(args.size()));
    const MultiBracket& base = b.base();
    const int d = b.spec().base_dim();
    SymbolValue sym;
    sym.spec = b.spec_ptr();
    sym.images.reserve(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        sym.images.push_back(bar_extend(
            b.spec_ptr(), args, strategy, [&](const std::vector<GradedElement>& sections) {
                return kw_symbol(base, sections).images[static_cast<std::size_t>(i)];
            }));
    }
    return sym;
}

HigherBracket higher_wedge(const HigherBracket& a, const HigherBracket& b) {
    return HigherBracket(kw_wedge(a.base(), b.base()));
}

HigherBracket higher_bracket(const HigherBracket& a, const HigherBracket& b) {
    return HigherBracket(kw_bracket(a.base(), b.base()));
}

GradedElement tilde_wedge_eval(const MultiBracket& c1, const MultiBracket& c2,
                               const std::vector<GradedElement>& args) {
    const int n = c1.n(), m = c2.n();
    if (static_cast<int>(args.size()) != n + m)
        throw Error("scalar product evaluation: expected " + std::to_string(n + m) +
                    " arguments");
    GradedElement acc = GradedElement::zero(c1.spec_ptr());
    for (const auto& tau : unshuffles(n, m)) {
        std::vector<GradedElement> first, second;
        for (int k = 0; k < n; ++k) first.push_back(args[static_cast<std::size_t>(tau.perm[k])]);
        for (int k = n; k < n + m; ++k)
            second.push_back(args[static_cast<std::size_t>(tau.perm[k])]);
        GradedElement term = kw_eval_tilde(c1, first) * kw_eval_tilde(c2, second);
        acc = (tau.sign > 0) ? acc + term : acc - term;
    }
    return acc;
}

} // namespace kw
