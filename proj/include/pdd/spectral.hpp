#pragma once

#include <vector>

#include "pdd/contingency.hpp"
#include "pdd/matrix.hpp"

namespace pdd {

// Real eigenpairs of a symmetric matrix, ordered by descending |eigenvalue|.
// Eigenvectors are orthonormal rows of `vectors` with a deterministic sign:
// the largest-magnitude component is positive, ties broken by lowest index.
struct SpectralDecomposition {
    std::vector<double> eigenvalues;
    std::vector<std::vector<double>> vectors;  // [k][i]
    std::size_t dim = 0;
};

SpectralDecomposition eigendecompose(const Matrix& matrix);

// One disentangled statistical space: an eigenpair plus its rank-one
// reprojection. rarv(i,j) = eigenvalue * loading[i] * loading[j].
struct DisentangledSpace {
    int ds_id = 0;  // 1-based rank in the decomposition
    double eigenvalue = 0.0;
    std::vector<double> loading;
    Matrix rarv;
};

DisentangledSpace reproject(const SpectralDecomposition& decomposition, int k);

// Retains spaces, in |eigenvalue| order, whose reprojection carries at least
// one cross-attribute entry above tau, stopping once max_ds are kept.
std::vector<DisentangledSpace> select_spaces(const SpectralDecomposition& decomposition,
                                             const AvIndex& index, double tau, int max_ds);

}  // namespace pdd
