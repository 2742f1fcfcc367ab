#pragma once

#include <memory>
#include <string>
#include <vector>

#include "kwcalc/rational.hpp"

namespace kw {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Exact inverse by Gauss-Jordan elimination; throws Error on a singular matrix.
RationalMatrix invert_matrix(const RationalMatrix& m);

/// The ambient bundle data: base dimension d (coordinates x1..xd, p1..pd),
/// fiber rank r (odd coordinates xi1..xir) and a constant symmetric
/// non-degenerate r x r metric. Owns all pairing conventions: the pairing of
/// the basis sections represented by the xi coordinates is the inverse metric,
/// so {xi^a, xi^b} = g^{ab}.
class BundleSpec {
public:
    BundleSpec(int base_dim, int rank, RationalMatrix metric);

    int base_dim() const { return d_; }
    int rank() const { return r_; }
    const RationalMatrix& metric() const { return g_; }
    const RationalMatrix& metric_inverse() const { return g_inv_; }

    /// Pairing coefficient of basis sections, 0-based indices.
    const Rational& pairing(int a, int b) const { return g_inv_[a][b]; }

    bool operator==(const BundleSpec& o) const {
        return d_ == o.d_ && r_ == o.r_ && g_ == o.g_;
    }

    std::string str() const;

    /// Identity metric on rank r over a d-dimensional base.
    static std::shared_ptr<const BundleSpec> identity(int base_dim, int rank);
    /// Split metric [[0,I],[I,0]] of rank 2d, the T + T* model over a
    /// d-dimensional base: xi^1..xi^d pair with xi^{d+1}..xi^{2d}.
    static std::shared_ptr<const BundleSpec> split(int base_dim);

private:
    int d_;
    int r_;
    RationalMatrix g_;
    RationalMatrix g_inv_;
};

using SpecPtr = std::shared_ptr<const BundleSpec>;

/// True when both elements live over equal bundle data.
inline bool same_spec(const SpecPtr& a, const SpecPtr& b) {
    return a == b || (a && b && *a == *b);
}

} // namespace kw
