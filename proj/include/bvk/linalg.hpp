#pragma once
#include <optional>
#include <vector>

#include "bvk/scalar.hpp"

namespace bvk {

// Dense exact rational matrix. Sizes here are small (tens of rows); plain
// Gauss-Jordan with full pivoting on exact arithmetic is enough.
class QMat {
  public:
    QMat() = default;
    QMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Rat(0)) {}
    static QMat identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rat& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const Rat& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    QMat transposed() const;
    QMat operator*(const QMat& o) const;
    QMat operator+(const QMat& o) const;
    QMat operator-(const QMat& o) const;
    bool operator==(const QMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
    bool is_zero() const;

    std::vector<Rat> apply(const std::vector<Rat>& v) const;

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rat> a_;
};

std::size_t rank(QMat m);
Rat det(QMat m);

// Column-space basis vectors of the kernel {x : m x = 0}.
std::vector<std::vector<Rat>> kernel_basis(QMat m);

// Basis of the column space (as vectors).
std::vector<std::vector<Rat>> image_basis(const QMat& m);

// One solution of m x = b, or nullopt when inconsistent. Free variables are
// set to zero; pivoting order is deterministic.
std::optional<std::vector<Rat>> solve(QMat m, std::vector<Rat> b);

// General solve with several right-hand sides stacked as columns.
std::optional<QMat> solve_columns(const QMat& m, const QMat& rhs);

std::optional<QMat> inverse(const QMat& m);

// True iff v lies in the span of the given vectors.
bool in_span(const std::vector<std::vector<Rat>>& span, const std::vector<Rat>& v);

// Reduce a spanning set to an independent basis (deterministic order).
std::vector<std::vector<Rat>> independent_subset(const std::vector<std::vector<Rat>>& vecs);

// Gram matrix <v_i, w_j> under the standard (optionally weighted) inner product.
QMat gram(const std::vector<std::vector<Rat>>& v, const std::vector<std::vector<Rat>>& w,
          const std::vector<Rat>* weights = nullptr);

// Symmetric positive definite test via leading principal minors.
bool positive_definite(const QMat& m);

} // namespace bvk
