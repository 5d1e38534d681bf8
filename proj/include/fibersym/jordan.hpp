#pragma once

#include "fibersym/linalg.hpp"

#include <map>
#include <vector>

namespace fibersym {

/// Jordan block census of a matrix at a single rational eigenvalue, derived
/// from the descending filtration d_k = dim(ker N ∩ Im N^k), N = M - lambda*I.
struct JordanCensus {
    Rational eigenvalue;
    /// d_0, d_1, ..., d_n (d_0 = dim ker N; d_n = 0).
    std::vector<Eigen::Index> filtration_dims;
    /// size -> number of Jordan blocks of exactly that size (zero counts omitted).
    std::map<Eigen::Index, Eigen::Index> blocks_of_size;
    /// Number of blocks of size >= 2 (= d_1).
    Eigen::Index nu2 = 0;

    Eigen::Index total_blocks() const {
        return filtration_dims.empty() ? 0 : filtration_dims.front();
    }
    Eigen::Index algebraic_multiplicity() const {
        Eigen::Index s = 0;
        for (const auto& [size, count] : blocks_of_size) s += size * count;
        return s;
    }
};

inline JordanCensus jordan_census(const MatrixQ& m, const Rational& lambda) {
    if (m.rows() != m.cols()) throw std::invalid_argument("jordan_census: matrix not square");
    const Eigen::Index n = m.rows();
    MatrixQ nmat = m - lambda * MatrixQ::Identity(n, n);

    JordanCensus census;
    census.eigenvalue = lambda;
    Subspace ker = kernel_basis(nmat);
    MatrixQ npow = MatrixQ::Identity(n, n);
    for (Eigen::Index k = 0; k <= n; ++k) {
        census.filtration_dims.push_back(subspace_intersect(ker, image_basis(npow)).dim());
        if (k < n) npow = (npow * nmat).eval();
    }
    for (Eigen::Index k = 1; k <= n; ++k) {
        Eigen::Index count = census.filtration_dims[k - 1] - census.filtration_dims[k];
        if (count > 0) census.blocks_of_size[k] = count;
    }
    census.nu2 = census.filtration_dims.size() > 1 ? census.filtration_dims[1] : 0;
    return census;
}

}  // namespace fibersym
