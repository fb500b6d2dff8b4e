#include "pdd/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pdd/errors.hpp"

namespace pdd {

namespace {

double off_diagonal_norm(const Matrix& a) {
    const std::size_t n = a.rows();
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) sum += a(i, j) * a(i, j);
    return std::sqrt(sum);
}

// Cyclic Jacobi rotations; converges quadratically for symmetric input and
// keeps the accumulated basis orthogonal to machine precision. Plenty for
// the T <= a few hundred this engine sees.
void jacobi(Matrix& a, Matrix& v, double tolerance) {
    const std::size_t n = a.rows();
    constexpr int kMaxSweeps = 64;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        if (off_diagonal_norm(a) <= tolerance) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                const double app = a(p, p);
                const double aqq = a(q, q);
                a(p, p) = app - t * apq;
                a(q, q) = aqq + t * apq;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(p, k) = a(k, p);
                    a(k, q) = s * akp + c * akq;
                    a(q, k) = a(k, q);
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
}

void fix_sign(std::vector<double>& u) {
    std::size_t arg = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double mag = std::abs(u[i]);
        if (mag > best) {  // strict: ties keep the lowest index
            best = mag;
            arg = i;
        }
    }
    if (!u.empty() && u[arg] < 0.0)
        for (double& x : u) x = -x;
}

}  // namespace

SpectralDecomposition eigendecompose(const Matrix& matrix) {
    if (matrix.rows() != matrix.cols())
        throw InternalError("eigendecomposition of a non-square matrix");
    if (!matrix.all_finite())
        throw DataError(ErrorCode::NumericInput, "matrix contains non-finite entries");

    const std::size_t n = matrix.rows();
    SpectralDecomposition out;
    out.dim = n;
    if (n == 0) return out;

    Matrix a = matrix;
    Matrix v = Matrix::identity(n);
    const double scale = matrix.frobenius_norm();
    jacobi(a, v, 1e-12 * std::max(scale, 1e-300));

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t lhs, std::size_t rhs) {
        const double la = std::abs(a(lhs, lhs));
        const double lb = std::abs(a(rhs, rhs));
        if (la != lb) return la > lb;
        if (a(lhs, lhs) != a(rhs, rhs)) return a(lhs, lhs) > a(rhs, rhs);
        return lhs < rhs;
    });

    out.eigenvalues.reserve(n);
    out.vectors.reserve(n);
    for (std::size_t k : order) {
        out.eigenvalues.push_back(a(k, k));
        std::vector<double> u(n);
        for (std::size_t i = 0; i < n; ++i) u[i] = v(i, k);
        fix_sign(u);
        out.vectors.push_back(std::move(u));
    }
    return out;
}

DisentangledSpace reproject(const SpectralDecomposition& decomposition, int k) {
    if (k < 1 || static_cast<std::size_t>(k) > decomposition.dim)
        throw DataError(ErrorCode::InvalidValue,
                        "component index " + std::to_string(k) + " out of range");
    DisentangledSpace space;
    space.ds_id = k;
    space.eigenvalue = decomposition.eigenvalues[k - 1];
    space.loading = decomposition.vectors[k - 1];
    const std::size_t n = decomposition.dim;
    space.rarv = Matrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            space.rarv(i, j) = space.eigenvalue * space.loading[i] * space.loading[j];
    return space;
}

std::vector<DisentangledSpace> select_spaces(const SpectralDecomposition& decomposition,
                                             const AvIndex& index, double tau, int max_ds) {
    std::vector<DisentangledSpace> kept;
    if (max_ds < 1) return kept;
    const std::size_t n = decomposition.dim;
    for (std::size_t k = 1; k <= n && kept.size() < static_cast<std::size_t>(max_ds); ++k) {
        DisentangledSpace space = reproject(decomposition, static_cast<int>(k));
        bool significant = false;
        for (std::size_t i = 0; i < n && !significant; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (index.cross_attribute(static_cast<int>(i), static_cast<int>(j)) &&
                    space.rarv(i, j) > tau) {
                    significant = true;
                    break;
                }
        if (significant) kept.push_back(std::move(space));
    }
    return kept;
}

}  // namespace pdd
