#include "kwcalc/poisson.hpp"

#include "kwcalc/errors.hpp"

namespace kw {

namespace {

Monomial erase_xi(const Monomial& m, std::size_t pos) {
    Monomial out = m;
    out.xi.erase(out.xi.begin() + static_cast<std::ptrdiff_t>(pos));
    return out;
}

} // namespace

GradedElement pbracket(const GradedElement& a, const GradedElement& b) {
    if (!same_spec(a.spec_ptr(), b.spec_ptr()))
        throw Error("pbracket arguments live over different bundles");
    const BundleSpec& spec = a.spec();
    GradedElement out = GradedElement::zero(a.spec_ptr());

    // {p_i, .} differentiates x-dependence, {x^i, .} pairs against p. Both
    // variables are even, so these contributions carry no Koszul sign.
    for (int i = 0; i < spec.base_dim(); ++i) {
        out = out + a.dp(i) * b.dx(i);
        out = out - a.dx(i) * b.dp(i);
    }

    // Odd contractions {xi^a, xi^b} = g^{ab}. Moving the chosen factor to the
    // boundary of its monomial costs one sign per odd factor crossed; the
    // remainders are then multiplied normally.
    TermMap acc;
    Monomial prod;
    int msign = 1;
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            for (std::size_t s = 0; s < ma.xi.size(); ++s) {
                for (std::size_t t = 0; t < mb.xi.size(); ++t) {
                    const Rational& gab = spec.pairing(ma.xi[s], mb.xi[t]);
                    if (gab.is_zero()) continue;
                    const Monomial rema = erase_xi(ma, s);
                    const Monomial remb = erase_xi(mb, t);
                    if (!mul_monomials(rema, remb, prod, msign)) continue;
                    int sign = ((ma.xi.size() - 1 - s) + t) & 1 ? -1 : 1;
                    Rational c = ca * cb * gab;
                    if (sign * msign < 0) c = -c;
                    auto it = acc.find(prod);
                    if (it == acc.end()) {
                        acc.emplace(prod, c);
                    } else {
                        it->second += c;
                        if (it->second.is_zero()) acc.erase(it);
                    }
                }
            }
        }
    }
    return out + GradedElement::from_terms(a.spec_ptr(), std::move(acc));
}

GradedElement hamiltonian(const GradedElement& theta, const GradedElement& a) {
    return pbracket(theta, a);
}

GradedElement section_pairing(const GradedElement& e, const GradedElement& ep) {
    if (!same_spec(e.spec_ptr(), ep.spec_ptr()))
        throw Error("pairing arguments live over different bundles");
    if (!e.is_section() || !ep.is_section())
        throw Error("pairing arguments must be sections");
    const BundleSpec& spec = e.spec();
    Monomial prod;
    int msign = 1;
    TermMap acc;
    for (const auto& [ma, ca] : e.terms()) {
        for (const auto& [mb, cb] : ep.terms()) {
            const Rational& gab = spec.pairing(ma.xi[0], mb.xi[0]);
            if (gab.is_zero()) continue;
            Monomial xa = ma, xb = mb;
            xa.xi.clear();
            xb.xi.clear();
            mul_monomials(xa, xb, prod, msign);
            auto it = acc.find(prod);
            if (it == acc.end()) {
                acc.emplace(prod, ca * cb * gab);
            } else {
                it->second += ca * cb * gab;
                if (it->second.is_zero()) acc.erase(it);
            }
        }
    }
    return GradedElement::from_terms(e.spec_ptr(), std::move(acc));
}

CourantData::CourantData(GradedElement theta) : theta_(std::move(theta)) {
    if (theta_.is_zero() || !theta_.is_homogeneous() || theta_.degree() != 3)
        throw Error("Courant generator must be homogeneous of degree 3");
}

GradedElement CourantData::anchor(const GradedElement& e, const GradedElement& f) const {
    if (!e.is_section()) throw Error("anchor argument must be a section");
    if (!f.is_function()) throw Error("anchor acts on functions");
    return pbracket(f, pbracket(e, theta_));
}

GradedElement CourantData::anchor_basis(int a, const GradedElement& f) const {
    return anchor(GradedElement::coordinate(theta_.spec_ptr(), CoordKind::Xi, a), f);
}

GradedElement CourantData::dorfman(const GradedElement& e, const GradedElement& ep) const {
    if (!e.is_section() || !ep.is_section())
        throw Error("Dorfman bracket arguments must be sections");
    return pbracket(ep, pbracket(e, theta_));
}

CourantData derived_courant(const GradedElement& theta) { return CourantData(theta); }

} // namespace kw
