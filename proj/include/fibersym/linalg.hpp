#pragma once

#include "fibersym/rational.hpp"

#include <Eigen/Dense>

#include <stdexcept>
#include <utility>
#include <vector>

namespace fibersym {

using MatrixQ = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using VectorQ = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using RowVectorQ = Eigen::Matrix<Rational, 1, Eigen::Dynamic>;

/// In-place reduced row echelon form. Returns the pivot column of each
/// nonzero row, in order.
inline std::vector<Eigen::Index> rref_in_place(MatrixQ& m) {
    std::vector<Eigen::Index> pivots;
    Eigen::Index row = 0;
    for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
        Eigen::Index p = -1;
        for (Eigen::Index r = row; r < m.rows(); ++r)
            if (m(r, col) != 0) { p = r; break; }
        if (p < 0) continue;
        if (p != row) m.row(p).swap(m.row(row));
        m.row(row) /= m(row, col);
        for (Eigen::Index r = 0; r < m.rows(); ++r)
            if (r != row && m(r, col) != 0) m.row(r) -= m(r, col) * m.row(row);
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <typename Derived>
Eigen::Index rank_exact(const Eigen::MatrixBase<Derived>& m) {
    MatrixQ work = m.template cast<Rational>();
    return static_cast<Eigen::Index>(rref_in_place(work).size());
}

template <typename Derived>
MatrixQ inverse_exact(const Eigen::MatrixBase<Derived>& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse_exact: matrix not square");
    Eigen::Index n = m.rows();
    MatrixQ work(n, 2 * n);
    work.leftCols(n) = m.template cast<Rational>();
    work.rightCols(n) = MatrixQ::Identity(n, n);
    auto pivots = rref_in_place(work);
    if (static_cast<Eigen::Index>(pivots.size()) != n || pivots.back() != n - 1)
        throw std::domain_error("inverse_exact: singular matrix");
    return work.rightCols(n);
}

/// Integral matrix power (negative exponents via exact inverse).
inline MatrixQ pow_exact(const MatrixQ& m, long e) {
    if (m.rows() != m.cols()) throw std::invalid_argument("pow_exact: matrix not square");
    MatrixQ base = e < 0 ? inverse_exact(m) : m;
    unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    MatrixQ out = MatrixQ::Identity(m.rows(), m.cols());
    while (k) {
        if (k & 1) out = (out * base).eval();
        base = (base * base).eval();
        k >>= 1;
    }
    return out;
}

/// A linear subspace of Q^n held in canonical form: the basis rows are in
/// reduced row echelon form with no zero rows, so two subspaces are equal
/// iff their representations are identical.
class Subspace {
  public:
    explicit Subspace(Eigen::Index ambient_dim) : ambient_(ambient_dim), basis_(0, ambient_dim) {}

    /// Canonicalizes the row span of `spanning_rows`.
    static Subspace from_rows(MatrixQ spanning_rows, Eigen::Index ambient_dim) {
        if (spanning_rows.cols() != ambient_dim)
            throw std::invalid_argument("Subspace: spanning rows have wrong width");
        auto pivots = rref_in_place(spanning_rows);
        Subspace s(ambient_dim);
        s.basis_ = spanning_rows.topRows(static_cast<Eigen::Index>(pivots.size()));
        return s;
    }

    static Subspace zero(Eigen::Index ambient_dim) { return Subspace(ambient_dim); }
    static Subspace full(Eigen::Index ambient_dim) {
        return from_rows(MatrixQ::Identity(ambient_dim, ambient_dim), ambient_dim);
    }

    Eigen::Index ambient_dim() const { return ambient_; }
    Eigen::Index dim() const { return basis_.rows(); }
    /// Canonical basis, one vector per row.
    const MatrixQ& basis() const { return basis_; }

    bool contains(const VectorQ& v) const {
        if (v.size() != ambient_) throw std::invalid_argument("Subspace::contains: wrong length");
        MatrixQ stacked(basis_.rows() + 1, ambient_);
        stacked.topRows(basis_.rows()) = basis_;
        stacked.row(basis_.rows()) = v.transpose();
        return rank_exact(stacked) == dim();
    }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient_ == b.ambient_ && a.basis_.rows() == b.basis_.rows() && a.basis_ == b.basis_;
    }

  private:
    Eigen::Index ambient_;
    MatrixQ basis_;
};

/// Canonical basis of {v : Mv = 0}.
template <typename Derived>
Subspace kernel_basis(const Eigen::MatrixBase<Derived>& m) {
    MatrixQ work = m.template cast<Rational>();
    const Eigen::Index n = work.cols();
    auto pivots = rref_in_place(work);
    std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
    for (auto c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;

    MatrixQ rows(n - static_cast<Eigen::Index>(pivots.size()), n);
    Eigen::Index out = 0;
    for (Eigen::Index free = 0; free < n; ++free) {
        if (is_pivot[static_cast<std::size_t>(free)]) continue;
        rows.row(out).setZero();
        rows(out, free) = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            rows(out, pivots[r]) = -work(static_cast<Eigen::Index>(r), free);
        ++out;
    }
    return Subspace::from_rows(std::move(rows), n);
}

/// Canonical basis of the column span of M.
template <typename Derived>
Subspace image_basis(const Eigen::MatrixBase<Derived>& m) {
    MatrixQ rows = m.transpose().template cast<Rational>();
    return Subspace::from_rows(std::move(rows), m.rows());
}

inline Subspace subspace_sum(const Subspace& u, const Subspace& v) {
    if (u.ambient_dim() != v.ambient_dim())
        throw std::invalid_argument("subspace_sum: ambient dimensions differ");
    MatrixQ rows(u.dim() + v.dim(), u.ambient_dim());
    rows.topRows(u.dim()) = u.basis();
    rows.bottomRows(v.dim()) = v.basis();
    return Subspace::from_rows(std::move(rows), u.ambient_dim());
}

/// U intersect V by the Zassenhaus block elimination.
inline Subspace subspace_intersect(const Subspace& u, const Subspace& v) {
    if (u.ambient_dim() != v.ambient_dim())
        throw std::invalid_argument("subspace_intersect: ambient dimensions differ");
    const Eigen::Index n = u.ambient_dim();
    MatrixQ block(u.dim() + v.dim(), 2 * n);
    block.setZero();
    block.block(0, 0, u.dim(), n) = u.basis();
    block.block(0, n, u.dim(), n) = u.basis();
    block.block(u.dim(), 0, v.dim(), n) = v.basis();
    rref_in_place(block);
    MatrixQ rows(block.rows(), n);
    Eigen::Index out = 0;
    for (Eigen::Index r = 0; r < block.rows(); ++r) {
        bool left_zero = true;
        for (Eigen::Index c = 0; c < n && left_zero; ++c) left_zero = block(r, c) == 0;
        bool right_zero = true;
        for (Eigen::Index c = 0; c < n && right_zero; ++c) right_zero = block(r, n + c) == 0;
        if (left_zero && !right_zero) rows.row(out++) = block.row(r).tail(n);
    }
    return Subspace::from_rows(rows.topRows(out), n);
}

}  // namespace fibersym
