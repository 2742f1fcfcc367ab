#include "kwcalc/bundle.hpp"

#include <sstream>

#include "kwcalc/errors.hpp"

namespace kw {

RationalMatrix invert_matrix(const RationalMatrix& m) {
    const std::size_t n = m.size();
    RationalMatrix a = m;
    RationalMatrix inv(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
        if (m[i].size() != n) throw Error("matrix is not square");
        inv[i][i] = Rational(1);
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a[pivot][col].is_zero()) ++pivot;
        if (pivot == n) throw Error("metric is singular");
        std::swap(a[pivot], a[col]);
        std::swap(inv[pivot], inv[col]);
        Rational inv_p = inverse(a[col][col]);
        for (std::size_t j = 0; j < n; ++j) {
            a[col][j] *= inv_p;
            inv[col][j] *= inv_p;
        }
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || a[row][col].is_zero()) continue;
            Rational f = a[row][col];
            for (std::size_t j = 0; j < n; ++j) {
                a[row][j] -= f * a[col][j];
                inv[row][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

BundleSpec::BundleSpec(int base_dim, int rank, RationalMatrix metric)
    : d_(base_dim), r_(rank), g_(std::move(metric)) {
    if (d_ < 0) throw Error("base dimension must be >= 0");
    if (r_ < 1) throw Error("fiber rank must be >= 1");
    if (static_cast<int>(g_.size()) != r_)
        throw Error("metric must be an r x r matrix");
    for (const auto& row : g_)
        if (static_cast<int>(row.size()) != r_)
            throw Error("metric must be an r x r matrix");
    for (int a = 0; a < r_; ++a)
        for (int b = a + 1; b < r_; ++b)
            if (g_[a][b] != g_[b][a]) throw Error("metric must be symmetric");
    g_inv_ = invert_matrix(g_);
}

std::string BundleSpec::str() const {
    std::ostringstream os;
    os << "d = " << d_ << "\n";
    os << "r = " << r_ << "\n";
    os << "g = [ ";
    for (int a = 0; a < r_; ++a) {
        if (a) os << " ; ";
        for (int b = 0; b < r_; ++b) {
            if (b) os << ' ';
            os << g_[a][b].str();
        }
    }
    os << " ]";
    return os.str();
}

std::shared_ptr<const BundleSpec> BundleSpec::identity(int base_dim, int rank) {
    RationalMatrix g(rank, std::vector<Rational>(rank, Rational(0)));
    for (int a = 0; a < rank; ++a) g[a][a] = Rational(1);
    return std::make_shared<const BundleSpec>(base_dim, rank, std::move(g));
}

std::shared_ptr<const BundleSpec> BundleSpec::split(int base_dim) {
    const int r = 2 * base_dim;
    RationalMatrix g(r, std::vector<Rational>(r, Rational(0)));
    for (int i = 0; i < base_dim; ++i) {
        g[i][base_dim + i] = Rational(1);
        g[base_dim + i][i] = Rational(1);
    }
    return std::make_shared<const BundleSpec>(base_dim, r, std::move(g));
}

} // namespace kw
