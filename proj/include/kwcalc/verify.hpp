#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kwcalc/higher.hpp"
#include "kwcalc/table.hpp"

namespace kw {

/// One axiom check: pass/fail with the first failing tuple (canonical
/// enumeration order) and its nonzero residual. A bound of k means the check
/// quantified over the generating family up to x-degree k; no bound means the
/// statement was certified exactly.
struct CheckResult {
    std::string name;
    std::string law;
    bool passed = true;
    std::optional<std::string> witness;
    std::optional<GradedElement> residual;
    std::optional<int> bound;
};

struct VerificationReport {
    std::vector<CheckResult> checks;

    bool passed() const;
    std::string render_text() const;
    /// One line per check: CHECK <name> PASS|FAIL [witness: ...] [residual: ...] [bound: D=<k>]
    std::string render_machine() const;
};

/// Verifies the two defining conditions of a bracket-with-symbol on the
/// generating family up to x-degree D. Generator-backed brackets satisfy them
/// identically, so their report carries no bound; tables are certified up to
/// their own D.
VerificationReport check_pre_courant(const MultiBracket& c, int D);
VerificationReport check_pre_courant(const BracketTable& table);

/// Closure {theta, theta} = 0; for odd generator degree, cross-checked against
/// the explicit self-insertion identity on generating tuples.
VerificationReport check_closure(const MultiBracket& c, int D = 1);

/// The n-ary Leibniz (Filippov) identity on generating tuples up to degree D.
/// For a binary bracket this is equivalent to closure; for higher arity the
/// two are independent, so the report carries both statuses.
VerificationReport check_filippov(const MultiBracket& c, int D);

/// Antisymmetric k-tensor over the base with polynomial coefficients.
/// Components are stored on strictly increasing index tuples; assignment
/// through unsorted tuples picks up the permutation sign.
class FormTensor {
public:
    FormTensor(SpecPtr spec, int k);

    int k() const { return k_; }
    const SpecPtr& spec_ptr() const { return spec_; }

    /// Sets the component for 0-based indices; repeated indices demand zero.
    void set(std::vector<int> idx, const GradedElement& coeff);
    /// Component for 0-based indices, with the sign of sorting them.
    GradedElement get(std::vector<int> idx) const;
    bool is_zero() const;
    const std::map<std::vector<int>, GradedElement>& components() const { return comp_; }

private:
    SpecPtr spec_;
    int k_;
    std::map<std::vector<int>, GradedElement> comp_;
};

/// de Rham differential on polynomial forms; d(d(H)) = 0.
FormTensor exterior_derivative(const FormTensor& h);

/// Generator of the twisted structure on the split model: the translation
/// part plus 1/6 of the cubic contraction of the 3-form H with the first d
/// odd coordinates. Closed exactly when dH = 0.
GradedElement twisted_theta(const SpecPtr& split_spec, const FormTensor& h);

/// Generator of the untwisted structure on the split model.
GradedElement standard_courant_theta(const SpecPtr& split_spec);

struct ExampleStructure {
    std::string name;
    SpecPtr spec;
    GradedElement theta;
    bool expected_closed;
    std::string note;
};

/// Built-in structures: the split-model bracket, closed and non-closed
/// twists, so(3) at a point, its broken perturbation, and an even-degree
/// generator that is closed for parity reasons.
const std::vector<ExampleStructure>& builtin_examples();
const ExampleStructure* find_example(const std::string& name);

} // namespace kw
