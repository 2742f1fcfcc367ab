#include "kwcalc/verify.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "kwcalc/errors.hpp"

namespace kw {

namespace {

std::string tuple_text(const std::vector<GradedElement>& tuple) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        if (i) os << ", ";
        os << tuple[i].str();
    }
    os << ')';
    return os.str();
}

/// Uniform extensional view of a bracket for the axiom checks: values and
/// symbol applications over a fixed generating family.
struct BracketView {
    int n = 0; // generator degree
    const std::vector<GradedElement>* family = nullptr;
    std::function<GradedElement(const std::vector<int>&)> value;
    std::function<GradedElement(const std::vector<int>&, const GradedElement&)> symbol_apply;
    std::optional<int> bound; // nullopt for generator-backed checks
};

std::vector<GradedElement> members(const BracketView& view, const std::vector<int>& key) {
    std::vector<GradedElement> out;
    out.reserve(key.size());
    for (int i : key) out.push_back((*view.family)[static_cast<std::size_t>(i)]);
    return out;
}

VerificationReport run_pre_courant(const BracketView& view) {
    VerificationReport report;
    const int N = view.n;
    const std::size_t fam = view.family->size();

    if (N <= 1) {
        CheckResult c;
        c.name = "pre_courant";
        c.law = "degree 0 and 1 elements carry a vanishing symbol and no conditions";
        c.bound = view.bound;
        report.checks.push_back(std::move(c));
        return report;
    }

    {
        CheckResult c;
        c.name = "pre_courant_compat";
        c.law = "sigma(e1,..)·<e,e'> = <C(e1,..,e),e'> + <e,C(e1,..,e')>";
        c.bound = view.bound;
        for_each_tuple(fam, static_cast<std::size_t>(N), [&](const std::vector<std::size_t>& idx) {
            std::vector<int> head(idx.begin(), idx.end() - 2);
            const int ei = static_cast<int>(idx[idx.size() - 2]);
            const int ej = static_cast<int>(idx[idx.size() - 1]);
            const GradedElement& e = (*view.family)[static_cast<std::size_t>(ei)];
            const GradedElement& ep = (*view.family)[static_cast<std::size_t>(ej)];
            GradedElement lhs = view.symbol_apply(head, section_pairing(e, ep));
            std::vector<int> with_e = head;
            with_e.push_back(ei);
            std::vector<int> with_ep = head;
            with_ep.push_back(ej);
            GradedElement rhs = section_pairing(view.value(with_e), ep) +
                                section_pairing(e, view.value(with_ep));
            GradedElement residual = lhs - rhs;
            if (!residual.is_zero()) {
                c.passed = false;
                std::vector<GradedElement> tuple = members(view, head);
                tuple.push_back(e);
                tuple.push_back(ep);
                c.witness = tuple_text(tuple);
                c.residual = residual;
                return false;
            }
            return true;
        });
        report.checks.push_back(std::move(c));
    }

    for (int i = 1; i <= N - 2; ++i) {
        CheckResult c;
        c.name = "pre_courant_sym_" + std::to_string(i);
        c.law = "<C(..,ei,ei+1,..) + C(..,ei+1,ei,..), e> = sigma(..,^ei,^ei+1,..,e)·<ei,ei+1>";
        c.bound = view.bound;
        for_each_tuple(fam, static_cast<std::size_t>(N), [&](const std::vector<std::size_t>& idx) {
            std::vector<int> argsA(idx.begin(), idx.end() - 1);
            const GradedElement& e = (*view.family)[idx.back()];
            std::vector<int> argsB = argsA;
            std::swap(argsB[static_cast<std::size_t>(i - 1)], argsB[static_cast<std::size_t>(i)]);
            GradedElement lhs = section_pairing(view.value(argsA), e) +
                                section_pairing(view.value(argsB), e);
            std::vector<int> sym_key;
            for (std::size_t k = 0; k + 1 < idx.size(); ++k)
                if (k != static_cast<std::size_t>(i - 1) && k != static_cast<std::size_t>(i))
                    sym_key.push_back(static_cast<int>(idx[k]));
            sym_key.push_back(static_cast<int>(idx.back()));
            const GradedElement& ei_el = (*view.family)[idx[static_cast<std::size_t>(i - 1)]];
            const GradedElement& ej_el = (*view.family)[idx[static_cast<std::size_t>(i)]];
            GradedElement rhs = view.symbol_apply(sym_key, section_pairing(ei_el, ej_el));
            GradedElement residual = lhs - rhs;
            if (!residual.is_zero()) {
                c.passed = false;
                std::vector<GradedElement> tuple = members(view, argsA);
                tuple.push_back(e);
                c.witness = tuple_text(tuple);
                c.residual = residual;
                return false;
            }
            return true;
        });
        report.checks.push_back(std::move(c));
    }
    return report;
}

} // namespace

bool VerificationReport::passed() const {
    for (const auto& c : checks)
        if (!c.passed) return false;
    return true;
}

std::string VerificationReport::render_machine() const {
    std::ostringstream os;
    for (const auto& c : checks) {
        os << "CHECK " << c.name << ' ' << (c.passed ? "PASS" : "FAIL");
        if (c.witness) os << " [witness: " << *c.witness << ']';
        if (c.residual) os << " [residual: " << c.residual->str() << ']';
        if (c.bound) os << " [bound: D=" << *c.bound << ']';
        os << '\n';
    }
    return os.str();
}

std::string VerificationReport::render_text() const {
    std::ostringstream os;
    for (const auto& c : checks) {
        os << (c.passed ? "pass" : "FAIL") << "  " << c.name << ": " << c.law;
        if (c.bound)
            os << " (checked on the generating family up to x-degree " << *c.bound << ')';
        else
            os << " (exact)";
        os << '\n';
        if (c.witness) os << "      witness " << *c.witness << '\n';
        if (c.residual) os << "      residual " << c.residual->str() << '\n';
    }
    os << (passed() ? "all checks passed" : "verification FAILED") << '\n';
    return os.str();
}

VerificationReport check_pre_courant(const MultiBracket& c, int D) {
    std::vector<GradedElement> family = monomial_sections(c.spec_ptr(), D);
    BracketView view;
    view.n = c.n();
    view.family = &family;
    view.value = [&](const std::vector<int>& key) {
        std::vector<GradedElement> tuple;
        for (int i : key) tuple.push_back(family[static_cast<std::size_t>(i)]);
        return kw_eval(c, tuple);
    };
    view.symbol_apply = [&](const std::vector<int>& key, const GradedElement& f) {
        std::vector<GradedElement> tuple;
        for (int i : key) tuple.push_back(family[static_cast<std::size_t>(i)]);
        return kw_symbol(c, tuple).apply(f);
    };
    view.bound = std::nullopt; // identities of the generator model, exact
    return run_pre_courant(view);
}

VerificationReport check_pre_courant(const BracketTable& table) {
    if (!table.spec) throw TableError("table has no bundle");
    BracketView view;
    view.n = table.n;
    view.family = &table.family;
    view.value = [&](const std::vector<int>& key) { return table.value(key); };
    view.symbol_apply = [&](const std::vector<int>& key, const GradedElement& f) {
        GradedElement out = GradedElement::zero(table.spec);
        for (int i = 0; i < table.spec->base_dim(); ++i)
            out = out + f.dx(i) * table.symbol(key, i);
        return out;
    };
    view.bound = table.D;
    return run_pre_courant(view);
}

VerificationReport check_closure(const MultiBracket& c, int D) {
    VerificationReport report;
    GradedElement residual = pbracket(c.theta(), c.theta());

    CheckResult main;
    main.name = "closure";
    main.law = "{theta, theta} = 0";
    if (!residual.is_zero()) {
        main.passed = false;
        main.residual = residual;
        // first generating tuple on which the defect bracket evaluates nonzero
        MultiBracket defect(residual, std::max(2 * c.n() - 2, 0));
        std::vector<GradedElement> family = monomial_sections(c.spec_ptr(), D);
        if (defect.n() >= 1) {
            for_each_tuple(family.size(), static_cast<std::size_t>(defect.n() - 1),
                           [&](const std::vector<std::size_t>& idx) {
                               std::vector<GradedElement> tuple;
                               for (auto i : idx) tuple.push_back(family[i]);
                               GradedElement v = kw_eval(defect, tuple);
                               if (!v.is_zero()) {
                                   main.witness = tuple_text(tuple);
                                   return false;
                               }
                               return true;
                           });
        }
    }
    report.checks.push_back(std::move(main));

    if (c.n() % 2 == 1 && c.n() >= 3) {
        // Self-insertion identity; equivalent to closure for odd degree.
        CheckResult cross;
        cross.name = "closure_self_insertion";
        cross.law = "sum over unshuffles of C(..,C(..),..) = 0";
        std::vector<GradedElement> family = monomial_sections(c.spec_ptr(), D);
        const std::size_t len = static_cast<std::size_t>(2 * c.n() - 3);
        // keep the tuple walk at desk scale
        int bound = D;
        double count = 1;
        std::vector<GradedElement> fam = family;
        while (bound > 0) {
            count = 1;
            for (std::size_t i = 0; i < len; ++i) count *= static_cast<double>(fam.size());
            if (count <= 200000) break;
            --bound;
            fam = monomial_sections(c.spec_ptr(), bound);
        }
        cross.bound = bound;
        for_each_tuple(fam.size(), len, [&](const std::vector<std::size_t>& idx) {
            std::vector<GradedElement> tuple;
            for (auto i : idx) tuple.push_back(fam[i]);
            GradedElement v = interior_eval_unshuffle(c, c, tuple);
            if (!v.is_zero()) {
                cross.passed = false;
                cross.witness = tuple_text(tuple);
                cross.residual = v;
                return false;
            }
            return true;
        });
        report.checks.push_back(std::move(cross));
    }
    return report;
}

VerificationReport check_filippov(const MultiBracket& c, int D) {
    const int arity = c.n() - 1;
    if (arity < 2) throw Error("Filippov identity needs a bracket of arity >= 2");
    VerificationReport report = check_closure(c, D);

    CheckResult fil;
    fil.name = "filippov";
    fil.law = "C(e1,..,C(e'1,..,e'n)) = sum_i C(e'1,..,C(e1,..,e'i),..,e'n)";
    if (arity == 2)
        fil.law += " (binary case: equivalent to closure)";

    std::vector<GradedElement> family = monomial_sections(c.spec_ptr(), D);
    const std::size_t len = static_cast<std::size_t>(2 * arity - 1);
    int bound = D;
    std::vector<GradedElement> fam = family;
    while (bound > 0) {
        double count = 1;
        for (std::size_t i = 0; i < len; ++i) count *= static_cast<double>(fam.size());
        if (count <= 200000) break;
        --bound;
        fam = monomial_sections(c.spec_ptr(), bound);
    }
    fil.bound = bound;
    for_each_tuple(fam.size(), len, [&](const std::vector<std::size_t>& idx) {
        std::vector<GradedElement> outer, inner;
        for (int i = 0; i < arity - 1; ++i) outer.push_back(fam[idx[static_cast<std::size_t>(i)]]);
        for (int i = arity - 1; i < 2 * arity - 1; ++i)
            inner.push_back(fam[idx[static_cast<std::size_t>(i)]]);
        std::vector<GradedElement> lhs_args = outer;
        lhs_args.push_back(kw_eval(c, inner));
        GradedElement lhs = kw_eval(c, lhs_args);
        GradedElement rhs = GradedElement::zero(c.spec_ptr());
        for (int i = 0; i < arity; ++i) {
            std::vector<GradedElement> in = outer;
            in.push_back(inner[static_cast<std::size_t>(i)]);
            std::vector<GradedElement> args = inner;
            args[static_cast<std::size_t>(i)] = kw_eval(c, in);
            rhs = rhs + kw_eval(c, args);
        }
        GradedElement residual = lhs - rhs;
        if (!residual.is_zero()) {
            fil.passed = false;
            std::vector<GradedElement> tuple = outer;
            tuple.insert(tuple.end(), inner.begin(), inner.end());
            fil.witness = tuple_text(tuple);
            fil.residual = residual;
            return false;
        }
        return true;
    });
    report.checks.push_back(std::move(fil));
    return report;
}

FormTensor::FormTensor(SpecPtr spec, int k) : spec_(std::move(spec)), k_(k) {
    if (k_ < 0) throw Error("form degree must be >= 0");
}

void FormTensor::set(std::vector<int> idx, const GradedElement& coeff) {
    if (static_cast<int>(idx.size()) != k_) throw Error("component has wrong number of indices");
    if (!coeff.is_function()) throw Error("form coefficients must be functions of x");
    for (int i : idx)
        if (i < 0 || i >= spec_->base_dim()) throw Error("form index out of range");
    // sort with sign
    int sign = 1;
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a + 1; b < idx.size(); ++b) {
            if (idx[a] == idx[b]) {
                if (!coeff.is_zero())
                    throw Error("non-antisymmetric input: repeated index with nonzero coefficient");
                return;
            }
            if (idx[a] > idx[b]) {
                std::swap(idx[a], idx[b]);
                sign = -sign;
            }
        }
    GradedElement v = sign > 0 ? coeff : -coeff;
    auto it = comp_.find(idx);
    if (it != comp_.end() && it->second != v)
        throw Error("non-antisymmetric input: conflicting component values");
    if (v.is_zero()) return;
    comp_.insert_or_assign(std::move(idx), std::move(v));
}

GradedElement FormTensor::get(std::vector<int> idx) const {
    int sign = 1;
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a + 1; b < idx.size(); ++b) {
            if (idx[a] == idx[b]) return GradedElement::zero(spec_);
            if (idx[a] > idx[b]) {
                std::swap(idx[a], idx[b]);
                sign = -sign;
            }
        }
    auto it = comp_.find(idx);
    if (it == comp_.end()) return GradedElement::zero(spec_);
    return sign > 0 ? it->second : -it->second;
}

bool FormTensor::is_zero() const {
    for (const auto& [idx, c] : comp_)
        if (!c.is_zero()) return false;
    return true;
}

FormTensor exterior_derivative(const FormTensor& h) {
    const SpecPtr& spec = h.spec_ptr();
    FormTensor out(spec, h.k() + 1);
    const int d = spec->base_dim();
    for (const auto& idx : subsets(d, h.k() + 1)) {
        GradedElement c = GradedElement::zero(spec);
        for (std::size_t j = 0; j < idx.size(); ++j) {
            std::vector<int> rest;
            for (std::size_t t = 0; t < idx.size(); ++t)
                if (t != j) rest.push_back(idx[t]);
            GradedElement term = h.get(rest).dx(idx[j]);
            c = (j % 2 == 0) ? c + term : c - term;
        }
        out.set(idx, c);
    }
    return out;
}

GradedElement standard_courant_theta(const SpecPtr& split_spec) {
    const int d = split_spec->base_dim();
    if (split_spec->rank() != 2 * d)
        throw Error("the split model needs fiber rank 2d");
    GradedElement theta = GradedElement::zero(split_spec);
    for (int i = 1; i <= d; ++i)
        theta = theta + GradedElement::coordinate(split_spec, CoordKind::Xi, i) *
                            GradedElement::coordinate(split_spec, CoordKind::P, i);
    return theta;
}

GradedElement twisted_theta(const SpecPtr& split_spec, const FormTensor& h) {
    if (h.k() != 3) throw Error("the twist takes a 3-form");
    if (!same_spec(h.spec_ptr(), split_spec)) throw Error("3-form lives over a different bundle");
    GradedElement theta = standard_courant_theta(split_spec);
    const int d = split_spec->base_dim();
    const Rational sixth(1, 6);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) {
                GradedElement c = h.get({i, j, k});
                if (c.is_zero()) continue;
                GradedElement cubic = GradedElement::coordinate(split_spec, CoordKind::Xi, i + 1) *
                                      GradedElement::coordinate(split_spec, CoordKind::Xi, j + 1) *
                                      GradedElement::coordinate(split_spec, CoordKind::Xi, k + 1);
                theta = theta + c * cubic * sixth;
            }
    return theta;
}

namespace {

std::vector<ExampleStructure> make_examples() {
    std::vector<ExampleStructure> out;

    {
        SpecPtr spec = BundleSpec::split(2);
        out.push_back({"standard_courant", spec, standard_courant_theta(spec), true,
                       "split model, Dorfman bracket acts by derivatives along the base"});
    }
    {
        SpecPtr spec = BundleSpec::split(3);
        FormTensor h(spec, 3);
        GradedElement one_plus_x1 =
            GradedElement::constant(spec, 1) + GradedElement::coordinate(spec, CoordKind::X, 1);
        h.set({0, 1, 2}, one_plus_x1);
        out.push_back({"twisted_closed", spec, twisted_theta(spec, h), true,
                       "twist by (1+x1)dx1^dx2^dx3; every 3-form over a 3-dimensional base is closed"});
    }
    {
        SpecPtr spec = BundleSpec::split(4);
        FormTensor h(spec, 3);
        h.set({0, 1, 2}, GradedElement::coordinate(spec, CoordKind::X, 4));
        out.push_back({"twisted_nonclosed", spec, twisted_theta(spec, h), false,
                       "twist by x4 dx1^dx2^dx3, whose differential is -dx1^dx2^dx3^dx4"});
    }
    {
        SpecPtr spec = BundleSpec::identity(0, 3);
        GradedElement theta = GradedElement::coordinate(spec, CoordKind::Xi, 1) *
                              GradedElement::coordinate(spec, CoordKind::Xi, 2) *
                              GradedElement::coordinate(spec, CoordKind::Xi, 3);
        out.push_back({"so3", spec, theta, true,
                       "quadratic Lie algebra at a point; the cross-product structure constants "
                       "satisfy the Jacobi identity"});
    }
    {
        SpecPtr spec = BundleSpec::identity(0, 5);
        auto xi = [&](int a) { return GradedElement::coordinate(spec, CoordKind::Xi, a); };
        GradedElement theta = xi(1) * xi(2) * xi(3) + xi(3) * xi(4) * xi(5);
        out.push_back({"so3_perturbed", spec, theta, false,
                       "two cubic blocks glued on a shared generator; the Jacobi identity fails"});
    }
    {
        SpecPtr spec = BundleSpec::identity(2, 4);
        auto xi = [&](int a) { return GradedElement::coordinate(spec, CoordKind::Xi, a); };
        auto x = [&](int i) { return GradedElement::coordinate(spec, CoordKind::X, i); };
        auto p = [&](int i) { return GradedElement::coordinate(spec, CoordKind::P, i); };
        GradedElement theta =
            xi(1) * xi(2) * xi(3) * xi(4) + x(1) * x(2) * p(1) * p(2) + p(1) * xi(1) * xi(2);
        out.push_back({"quartic", spec, theta, true,
                       "even degree, closed for parity reasons whatever the coefficients"});
    }
    return out;
}

} // namespace

const std::vector<ExampleStructure>& builtin_examples() {
    static const std::vector<ExampleStructure> examples = make_examples();
    return examples;
}

const ExampleStructure* find_example(const std::string& name) {
    for (const auto& ex : builtin_examples())
        if (ex.name == name) return &ex;
    return nullptr;
}

} // namespace kw
