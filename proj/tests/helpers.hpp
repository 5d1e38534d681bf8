#pragma once

#include "fibersym/linalg.hpp"

#include <initializer_list>
#include <random>

namespace fibersym::testing {

inline MatrixQ mq(Eigen::Index rows, Eigen::Index cols, std::initializer_list<long> entries) {
    MatrixQ m(rows, cols);
    auto it = entries.begin();
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = Rational(*it++);
    return m;
}

inline VectorQ vq(std::initializer_list<long> entries) {
    VectorQ v(static_cast<Eigen::Index>(entries.size()));
    Eigen::Index k = 0;
    for (long e : entries) v(k++) = Rational(e);
    return v;
}

/// The monodromy difference matrix the golden tests pin everything against,
/// on the torus basis order (a0, a1, a2, a3, b0).
inline MatrixQ golden_fstar_minus_1() {
    return mq(5, 5,
              {-1, -1, -1, -1, 1,
                0,  0,  0,  0, -1,
                1,  1,  1,  1, 1,
                0,  0,  0,  0, -1,
                0,  0,  0,  0, 0});
}

inline MatrixQ random_int_matrix(std::mt19937& rng, Eigen::Index rows, Eigen::Index cols,
                                 int lo = -3, int hi = 3) {
    std::uniform_int_distribution<int> dist(lo, hi);
    MatrixQ m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = Rational(dist(rng));
    return m;
}

/// Random unimodular integer matrix built from elementary row operations.
inline MatrixQ random_unimodular(std::mt19937& rng, Eigen::Index n, int ops = 12) {
    std::uniform_int_distribution<int> pick(0, static_cast<int>(n) - 1);
    std::uniform_int_distribution<int> coef(-2, 2);
    MatrixQ m = MatrixQ::Identity(n, n);
    for (int k = 0; k < ops; ++k) {
        int r = pick(rng), s = pick(rng);
        if (r == s) continue;
        m.row(r) += Rational(coef(rng)) * m.row(s);
    }
    return m;
}

}  // namespace fibersym::testing
