#include "bvk/linalg.hpp"

namespace bvk {

QMat QMat::identity(std::size_t n) {
    QMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

QMat QMat::transposed() const {
    QMat t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
    return t;
}

QMat QMat::operator*(const QMat& o) const {
    require(cols_ == o.rows_, "matrix product dimension mismatch");
    QMat p(rows_, o.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rat& x = at(r, k);
            if (x == 0) continue;
            for (std::size_t c = 0; c < o.cols_; ++c) p.at(r, c) += x * o.at(k, c);
        }
    return p;
}

QMat QMat::operator+(const QMat& o) const {
    require(rows_ == o.rows_ && cols_ == o.cols_, "matrix sum dimension mismatch");
    QMat s = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) s.a_[i] += o.a_[i];
    return s;
}

QMat QMat::operator-(const QMat& o) const {
    require(rows_ == o.rows_ && cols_ == o.cols_, "matrix diff dimension mismatch");
    QMat s = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) s.a_[i] -= o.a_[i];
    return s;
}

bool QMat::is_zero() const {
    for (auto& x : a_)
        if (x != 0) return false;
    return true;
}

std::vector<Rat> QMat::apply(const std::vector<Rat>& v) const {
    require(v.size() == cols_, "matrix-vector dimension mismatch");
    std::vector<Rat> r(rows_, Rat(0));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (at(i, j) != 0) r[i] += at(i, j) * v[j];
    return r;
}

namespace {

// Row-reduce in place; returns pivot columns. Eliminates above and below.
std::vector<std::size_t> rref(QMat& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t p = row;
        while (p < m.rows() && m.at(p, col) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != row)
            for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m.at(p, c), m.at(row, c));
        Rat inv = 1 / m.at(row, col);
        for (std::size_t c = col; c < m.cols(); ++c) m.at(row, c) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || m.at(r, col) == 0) continue;
            Rat f = m.at(r, col);
            for (std::size_t c = col; c < m.cols(); ++c) m.at(r, c) -= f * m.at(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

} // namespace

std::size_t rank(QMat m) { return rref(m).size(); }

Rat det(QMat m) {
    require(m.rows() == m.cols(), "det of non-square matrix");
    Rat d(1);
    const std::size_t n = m.rows();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = col;
        while (p < n && m.at(p, col) == 0) ++p;
        if (p == n) return Rat(0);
        if (p != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(m.at(p, c), m.at(col, c));
            d = -d;
        }
        d *= m.at(col, col);
        Rat inv = 1 / m.at(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m.at(r, col) == 0) continue;
            Rat f = m.at(r, col) * inv;
            for (std::size_t c = col; c < n; ++c) m.at(r, c) -= f * m.at(col, c);
        }
    }
    return d;
}

std::vector<std::vector<Rat>> kernel_basis(QMat m) {
    const std::size_t n = m.cols();
    auto pivots = rref(m);
    std::vector<bool> is_pivot(n, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Rat>> basis;
    for (std::size_t fc = 0; fc < n; ++fc) {
        if (is_pivot[fc]) continue;
        std::vector<Rat> v(n, Rat(0));
        v[fc] = 1;
        for (std::size_t pr = 0; pr < pivots.size(); ++pr) v[pivots[pr]] = -m.at(pr, fc);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<std::vector<Rat>> image_basis(const QMat& m) {
    QMat r = m;
    auto pivots = rref(r);
    std::vector<std::vector<Rat>> basis;
    for (auto c : pivots) {
        std::vector<Rat> v(m.rows(), Rat(0));
        for (std::size_t i = 0; i < m.rows(); ++i) v[i] = m.at(i, c);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<Rat>> solve(QMat m, std::vector<Rat> b) {
    require(b.size() == m.rows(), "solve: rhs dimension mismatch");
    QMat aug(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) aug.at(r, c) = m.at(r, c);
        aug.at(r, m.cols()) = b[r];
    }
    auto pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt; // 0 = 1 row
    std::vector<Rat> x(m.cols(), Rat(0));
    for (std::size_t pr = 0; pr < pivots.size(); ++pr) x[pivots[pr]] = aug.at(pr, m.cols());
    return x;
}

std::optional<QMat> solve_columns(const QMat& m, const QMat& rhs) {
    require(rhs.rows() == m.rows(), "solve_columns: dimension mismatch");
    QMat x(m.cols(), rhs.cols());
    for (std::size_t c = 0; c < rhs.cols(); ++c) {
        std::vector<Rat> b(m.rows());
        for (std::size_t r = 0; r < m.rows(); ++r) b[r] = rhs.at(r, c);
        auto col = solve(m, std::move(b));
        if (!col) return std::nullopt;
        for (std::size_t r = 0; r < m.cols(); ++r) x.at(r, c) = (*col)[r];
    }
    return x;
}

std::optional<QMat> inverse(const QMat& m) {
    require(m.rows() == m.cols(), "inverse of non-square matrix");
    auto x = solve_columns(m, QMat::identity(m.rows()));
    if (!x) return std::nullopt;
    // solve() zero-fills free variables, so verify.
    if (!((m * *x) == QMat::identity(m.rows()))) return std::nullopt;
    return x;
}

bool in_span(const std::vector<std::vector<Rat>>& span, const std::vector<Rat>& v) {
    if (span.empty()) {
        for (auto& x : v)
            if (x != 0) return false;
        return true;
    }
    QMat m(v.size(), span.size());
    for (std::size_t c = 0; c < span.size(); ++c) {
        require(span[c].size() == v.size(), "in_span: dimension mismatch");
        for (std::size_t r = 0; r < v.size(); ++r) m.at(r, c) = span[c][r];
    }
    return solve(std::move(m), v).has_value();
}

std::vector<std::vector<Rat>> independent_subset(const std::vector<std::vector<Rat>>& vecs) {
    std::vector<std::vector<Rat>> basis;
    for (auto& v : vecs)
        if (!in_span(basis, v)) basis.push_back(v);
    return basis;
}

QMat gram(const std::vector<std::vector<Rat>>& v, const std::vector<std::vector<Rat>>& w,
          const std::vector<Rat>* weights) {
    QMat g(v.size(), w.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < w.size(); ++j) {
            require(v[i].size() == w[j].size(), "gram: dimension mismatch");
            Rat s(0);
            for (std::size_t k = 0; k < v[i].size(); ++k) {
                Rat t = v[i][k] * w[j][k];
                if (weights) t *= (*weights)[k];
                s += t;
            }
            g.at(i, j) = s;
        }
    return g;
}

bool positive_definite(const QMat& m) {
    if (m.rows() != m.cols()) return false;
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (m.at(r, c) != m.at(c, r)) return false;
    for (std::size_t k = 1; k <= m.rows(); ++k) {
        QMat minor(k, k);
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t c = 0; c < k; ++c) minor.at(r, c) = m.at(r, c);
        if (det(std::move(minor)) <= 0) return false;
    }
    return true;
}

} // namespace bvk
