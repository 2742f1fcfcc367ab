#include "kwcalc/element.hpp"

#include <algorithm>
#include <sstream>

#include "kwcalc/errors.hpp"

namespace kw {

namespace {

void add_term(TermMap& terms, const Monomial& m, const Rational& c) {
    if (c.is_zero()) return;
    auto it = terms.find(m);
    if (it == terms.end()) {
        terms.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
}

void check_same_spec(const GradedElement& a, const GradedElement& b) {
    if (!same_spec(a.spec_ptr(), b.spec_ptr()))
        throw Error("elements live over different bundles");
}

} // namespace

bool mul_monomials(const Monomial& a, const Monomial& b, Monomial& out, int& sign) {
    out.x.resize(a.x.size());
    out.p.resize(a.p.size());
    for (std::size_t i = 0; i < a.x.size(); ++i) out.x[i] = a.x[i] + b.x[i];
    for (std::size_t i = 0; i < a.p.size(); ++i) out.p[i] = a.p[i] + b.p[i];
    // Merge the odd index lists; each element of b.xi passing over a later
    // element of a.xi flips the sign.
    out.xi.clear();
    out.xi.reserve(a.xi.size() + b.xi.size());
    std::size_t ia = 0, ib = 0;
    int flips = 0;
    while (ia < a.xi.size() && ib < b.xi.size()) {
        if (a.xi[ia] == b.xi[ib]) return false; // odd square
        if (a.xi[ia] < b.xi[ib]) {
            out.xi.push_back(a.xi[ia++]);
        } else {
            flips += static_cast<int>(a.xi.size() - ia);
            out.xi.push_back(b.xi[ib++]);
        }
    }
    while (ia < a.xi.size()) out.xi.push_back(a.xi[ia++]);
    while (ib < b.xi.size()) out.xi.push_back(b.xi[ib++]);
    sign = (flips & 1) ? -1 : 1;
    return true;
}

GradedElement GradedElement::constant(SpecPtr spec, const Rational& c) {
    GradedElement e(std::move(spec));
    Monomial one;
    one.x.assign(e.spec().base_dim(), 0);
    one.p.assign(e.spec().base_dim(), 0);
    add_term(e.terms_, one, c);
    return e;
}

GradedElement GradedElement::coordinate(SpecPtr spec, CoordKind kind, int index) {
    GradedElement e(std::move(spec));
    const int d = e.spec().base_dim();
    const int r = e.spec().rank();
    Monomial m;
    m.x.assign(d, 0);
    m.p.assign(d, 0);
    switch (kind) {
        case CoordKind::X:
            if (index < 1 || index > d)
                throw Error("coordinate index out of range: x" + std::to_string(index));
            m.x[index - 1] = 1;
            break;
        case CoordKind::Xi:
            if (index < 1 || index > r)
                throw Error("coordinate index out of range: xi" + std::to_string(index));
            m.xi.push_back(index - 1);
            break;
        case CoordKind::P:
            if (index < 1 || index > d)
                throw Error("coordinate index out of range: p" + std::to_string(index));
            m.p[index - 1] = 1;
            break;
    }
    e.terms_.emplace(std::move(m), Rational(1));
    return e;
}

GradedElement GradedElement::from_monomial(SpecPtr spec, Monomial m, const Rational& c) {
    GradedElement e(std::move(spec));
    const int d = e.spec().base_dim();
    if (static_cast<int>(m.x.size()) != d || static_cast<int>(m.p.size()) != d)
        throw Error("monomial has wrong base dimension");
    for (std::size_t i = 0; i + 1 < m.xi.size(); ++i)
        if (m.xi[i] >= m.xi[i + 1]) throw Error("monomial odd indices must be strictly increasing");
    if (!m.xi.empty() && (m.xi.front() < 0 || m.xi.back() >= e.spec().rank()))
        throw Error("monomial odd index out of range");
    add_term(e.terms_, m, c);
    return e;
}

GradedElement GradedElement::from_terms(SpecPtr spec, TermMap terms) {
    GradedElement e(std::move(spec));
    for (auto it = terms.begin(); it != terms.end();) {
        if (it->second.is_zero())
            it = terms.erase(it);
        else
            ++it;
    }
    e.terms_ = std::move(terms);
    return e;
}

bool GradedElement::is_homogeneous() const {
    if (terms_.empty()) return true;
    const int deg = terms_.begin()->first.degree();
    for (const auto& [m, c] : terms_)
        if (m.degree() != deg) return false;
    return true;
}

int GradedElement::degree() const {
    if (terms_.empty()) throw Error("degree of the zero element is undefined");
    if (!is_homogeneous()) throw Error("element is not homogeneous");
    return terms_.begin()->first.degree();
}

int GradedElement::max_x_degree() const {
    int best = 0;
    for (const auto& [m, c] : terms_) best = std::max(best, m.x_degree());
    return best;
}

std::map<int, GradedElement> GradedElement::degree_decompose() const {
    std::map<int, GradedElement> out;
    for (const auto& [m, c] : terms_) {
        auto [it, inserted] = out.try_emplace(m.degree(), GradedElement(spec_));
        it->second.terms_.emplace(m, c);
    }
    return out;
}

GradedElement GradedElement::component(int degree) const {
    GradedElement out(spec_);
    for (const auto& [m, c] : terms_)
        if (m.degree() == degree) out.terms_.emplace(m, c);
    return out;
}

bool GradedElement::is_function() const {
    for (const auto& [m, c] : terms_)
        if (m.degree() != 0) return false;
    return true;
}

bool GradedElement::is_section() const {
    for (const auto& [m, c] : terms_)
        if (m.degree() != 1) return false;
    return true;
}

bool GradedElement::is_multivector() const {
    for (const auto& [m, c] : terms_)
        if (m.has_p()) return false;
    return true;
}

GradedElement GradedElement::operator-() const {
    GradedElement out(spec_);
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
}

GradedElement GradedElement::operator+(const GradedElement& o) const {
    check_same_spec(*this, o);
    GradedElement out(spec_);
    out.terms_ = terms_;
    for (const auto& [m, c] : o.terms_) add_term(out.terms_, m, c);
    return out;
}

GradedElement GradedElement::operator-(const GradedElement& o) const {
    check_same_spec(*this, o);
    GradedElement out(spec_);
    out.terms_ = terms_;
    for (const auto& [m, c] : o.terms_) add_term(out.terms_, m, -c);
    return out;
}

GradedElement GradedElement::operator*(const GradedElement& o) const {
    check_same_spec(*this, o);
    GradedElement out(spec_);
    Monomial prod;
    int sign = 1;
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            if (!mul_monomials(ma, mb, prod, sign)) continue;
            add_term(out.terms_, prod, sign > 0 ? ca * cb : -(ca * cb));
        }
    }
    return out;
}

GradedElement GradedElement::operator*(const Rational& c) const {
    GradedElement out(spec_);
    if (c.is_zero()) return out;
    for (const auto& [m, coeff] : terms_) out.terms_.emplace(m, coeff * c);
    return out;
}

GradedElement GradedElement::dx(int i) const {
    GradedElement out(spec_);
    for (const auto& [m, c] : terms_) {
        if (m.x[i] == 0) continue;
        Monomial d = m;
        d.x[i] -= 1;
        add_term(out.terms_, d, c * Rational(static_cast<long>(m.x[i])));
    }
    return out;
}

GradedElement GradedElement::dp(int i) const {
    GradedElement out(spec_);
    for (const auto& [m, c] : terms_) {
        if (m.p[i] == 0) continue;
        Monomial d = m;
        d.p[i] -= 1;
        add_term(out.terms_, d, c * Rational(static_cast<long>(m.p[i])));
    }
    return out;
}

Rational GradedElement::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

bool GradedElement::operator==(const GradedElement& o) const {
    return same_spec(spec_, o.spec_) && terms_ == o.terms_;
}

std::string monomial_str(const Monomial& m) {
    std::ostringstream os;
    bool first = true;
    auto emit = [&](const std::string& name, unsigned exp) {
        if (!first) os << '*';
        first = false;
        os << name;
        if (exp > 1) os << '^' << exp;
    };
    for (std::size_t i = 0; i < m.x.size(); ++i)
        if (m.x[i]) emit("x" + std::to_string(i + 1), m.x[i]);
    for (int a : m.xi) emit("xi" + std::to_string(a + 1), 1);
    for (std::size_t i = 0; i < m.p.size(); ++i)
        if (m.p[i]) emit("p" + std::to_string(i + 1), m.p[i]);
    return os.str();
}

std::string GradedElement::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (first) {
            if (c.is_negative()) os << '-';
        } else {
            os << (c.is_negative() ? " - " : " + ");
        }
        first = false;
        const Rational mag = c.abs();
        const std::string factors = monomial_str(m);
        if (factors.empty()) {
            os << mag.str();
        } else if (mag.is_one()) {
            os << factors;
        } else {
            os << mag.str() << '*' << factors;
        }
    }
    return os.str();
}

GradedElement normalize(const SpecPtr& spec,
                        const std::vector<std::pair<Rational, std::vector<Factor>>>& raw) {
    GradedElement acc = GradedElement::zero(spec);
    for (const auto& [coeff, factors] : raw) {
        GradedElement term = GradedElement::constant(spec, coeff);
        for (const Factor& f : factors)
            term = term * GradedElement::coordinate(spec, f.kind, f.index);
        acc = acc + term;
    }
    return acc;
}

std::vector<Monomial> monomials_of_degree(const BundleSpec& spec, int degree, int max_x_degree) {
    std::vector<Monomial> out;
    const int d = spec.base_dim();
    const int r = spec.rank();

    // x-exponent multi-indices of total degree <= max_x_degree
    std::vector<std::vector<std::uint32_t>> xparts;
    std::vector<std::uint32_t> cur(d, 0);
    auto rec_x = [&](auto&& self, int pos, int remaining) -> void {
        if (pos == d) {
            xparts.push_back(cur);
            return;
        }
        for (int e = 0; e <= remaining; ++e) {
            cur[pos] = static_cast<std::uint32_t>(e);
            self(self, pos + 1, remaining - e);
        }
        cur[pos] = 0;
    };
    if (d == 0)
        xparts.push_back({});
    else
        rec_x(rec_x, 0, max_x_degree);

    // p-exponent multi-indices of fixed total degree
    auto p_indices = [&](int total) {
        std::vector<std::vector<std::uint32_t>> parts;
        std::vector<std::uint32_t> pc(d, 0);
        auto rec = [&](auto&& self, int pos, int remaining) -> void {
            if (pos == d) {
                if (remaining == 0) parts.push_back(pc);
                return;
            }
            for (int e = 0; e <= remaining; ++e) {
                pc[pos] = static_cast<std::uint32_t>(e);
                self(self, pos + 1, remaining - e);
            }
            pc[pos] = 0;
        };
        if (d == 0) {
            if (total == 0) parts.push_back({});
        } else {
            rec(rec, 0, total);
        }
        return parts;
    };

    // xi index subsets of fixed size
    auto xi_subsets = [&](int size) {
        std::vector<std::vector<int>> subs;
        std::vector<int> sub;
        auto rec = [&](auto&& self, int start) -> void {
            if (static_cast<int>(sub.size()) == size) {
                subs.push_back(sub);
                return;
            }
            for (int a = start; a < r; ++a) {
                sub.push_back(a);
                self(self, a + 1);
                sub.pop_back();
            }
        };
        rec(rec, 0);
        return subs;
    };

    for (int xi_count = degree & 1; xi_count <= std::min(degree, r); xi_count += 2) {
        const int p_total = (degree - xi_count) / 2;
        auto ps = p_indices(p_total);
        auto xis = xi_subsets(xi_count);
        for (const auto& pv : ps) {
            for (const auto& xv : xis) {
                for (const auto& xp : xparts) {
                    Monomial m;
                    m.x = xp;
                    m.xi = xv;
                    m.p = pv;
                    out.push_back(std::move(m));
                }
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) {
        return MonomialOrder{}(a, b);
    });
    return out;
}

std::vector<GradedElement> monomial_sections(const SpecPtr& spec, int D) {
    std::vector<GradedElement> out;
    for (const Monomial& m : monomials_of_degree(*spec, 1, D))
        out.push_back(GradedElement::from_monomial(spec, m, Rational(1)));
    return out;
}

} // namespace kw
