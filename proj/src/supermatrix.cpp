#include "bvk/supermatrix.hpp"

#include <algorithm>
#include <numeric>

namespace bvk {

SuperMatrix::SuperMatrix(Context ctx, std::size_t p, std::size_t q)
    : ctx_(std::move(ctx)), p_(p), q_(q), e_((p + q) * (p + q), SuperPoly(ctx_)) {
    require(p + q > 0, "empty supermatrix");
}

const SuperPoly& SuperMatrix::at(std::size_t r, std::size_t c) const {
    require(r < order() && c < order(), "supermatrix index out of range");
    return e_[r * order() + c];
}

void SuperMatrix::set(std::size_t r, std::size_t c, const SuperPoly& v) {
    require(r < order() && c < order(), "supermatrix index out of range");
    require_same_context(ctx_, v.context(), "supermatrix entry");
    bool diag_block = (r < p_) == (c < p_);
    if (!v.is_zero()) {
        require(v.is_homogeneous_parity(), "supermatrix entry must be parity homogeneous");
        require((v.parity() == Parity::even) == diag_block,
                diag_block ? "diagonal block entries must be even"
                           : "off-diagonal block entries must be odd");
    }
    e_[r * order() + c] = v;
}

SuperMatrix SuperMatrix::identity(const Context& ctx, std::size_t p, std::size_t q) {
    SuperMatrix m(ctx, p, q);
    for (std::size_t i = 0; i < p + q; ++i)
        m.set(i, i, SuperPoly::constant(ctx, Scalar::one()));
    return m;
}

SuperMatrix SuperMatrix::operator*(const SuperMatrix& o) const {
    require(p_ == o.p_ && q_ == o.q_, "supermatrix product: order mismatch");
    require_same_context(ctx_, o.ctx_, "supermatrix product");
    SuperMatrix r(ctx_, p_, q_);
    for (std::size_t i = 0; i < order(); ++i)
        for (std::size_t k = 0; k < order(); ++k) {
            SuperPoly s(ctx_);
            for (std::size_t j = 0; j < order(); ++j) s += mul(at(i, j), o.at(j, k));
            r.e_[i * order() + k] = s; // parity follows from block structure
        }
    return r;
}

bool SuperMatrix::operator==(const SuperMatrix& o) const {
    if (p_ != o.p_ || q_ != o.q_ || ctx_ != o.ctx_) return false;
    for (std::size_t i = 0; i < e_.size(); ++i)
        if (!(e_[i] == o.e_[i])) return false;
    return true;
}

SuperPoly even_inverse(const SuperPoly& u) {
    Scalar s = u.constant_term();
    // Unit scalar part, nilpotent rest.
    Scalar sinv = s.inverse(); // throws when the scalar part is not a unit
    SuperPoly n = u.scaled(sinv) - SuperPoly::constant(u.context(), Scalar::one());
    require(n.body().is_zero(),
            "even element is not a unit: body has non-constant part " + n.body().to_string());
    SuperPoly acc = SuperPoly::constant(u.context(), Scalar::one());
    SuperPoly pw = n;
    int sign = -1;
    while (!pw.is_zero()) {
        acc += (sign < 0) ? -pw : pw;
        pw = mul(pw, n);
        sign = -sign;
    }
    return acc.scaled(sinv);
}

SuperPoly even_det(const std::vector<std::vector<SuperPoly>>& m, const Context& ctx) {
    std::size_t n = m.size();
    if (n == 0) return SuperPoly::constant(ctx, Scalar::one());
    if (n == 1) return m[0][0];
    // Laplace expansion along the first column; entries are even, so they
    // commute and cofactor bookkeeping is the classical one.
    SuperPoly d(ctx);
    for (std::size_t r = 0; r < n; ++r) {
        if (m[r][0].is_zero()) continue;
        std::vector<std::vector<SuperPoly>> minor;
        minor.reserve(n - 1);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == r) continue;
            std::vector<SuperPoly> row(m[i].begin() + 1, m[i].end());
            minor.push_back(std::move(row));
        }
        SuperPoly term = mul(m[r][0], even_det(minor, ctx));
        d += (r % 2) ? -term : term;
    }
    return d;
}

SuperPoly even_det_leibniz(const std::vector<std::vector<SuperPoly>>& m, const Context& ctx) {
    std::size_t n = m.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    SuperPoly d(ctx);
    do {
        // permutation sign
        int sign = 1;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) sign = -sign;
        SuperPoly term = SuperPoly::constant(ctx, Scalar::one());
        for (std::size_t i = 0; i < n; ++i) term = mul(term, m[i][perm[i]]);
        d += (sign < 0) ? -term : term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return d;
}

namespace {

std::vector<std::vector<SuperPoly>> block(const SuperMatrix& x, bool top, bool left) {
    std::size_t r0 = top ? 0 : x.p(), r1 = top ? x.p() : x.order();
    std::size_t c0 = left ? 0 : x.p(), c1 = left ? x.p() : x.order();
    std::vector<std::vector<SuperPoly>> b;
    for (std::size_t r = r0; r < r1; ++r) {
        std::vector<SuperPoly> row;
        for (std::size_t c = c0; c < c1; ++c) row.push_back(x.at(r, c));
        b.push_back(std::move(row));
    }
    return b;
}

} // namespace

bool is_invertible(const SuperMatrix& x) {
    // body(A), body(D) invertible over the even polynomial algebra; with a
    // polynomial body this means the determinant is a unit scalar.
    for (bool top : {true, false}) {
        auto blk = block(x, top, top);
        for (auto& row : blk)
            for (auto& e : row) e = e.body();
        SuperPoly d = even_det(blk, x.context());
        Scalar c = d.constant_term();
        if (c.is_zero() || !c.is_monomial()) return false;
        if (!(d - SuperPoly::constant(x.context(), c)).is_zero()) return false;
    }
    return true;
}

SuperMatrix inverse(const SuperMatrix& x) {
    require(is_invertible(x), "supermatrix is not invertible");
    const Context& ctx = x.context();
    std::size_t n = x.order();
    // Body inverse: scalar matrix inverse of the constant part, then the
    // finite geometric series in the nilpotent remainder N = X0^-1 X - 1.
    // Constant parts are scalars; invert that matrix exactly via even_det
    // cofactors (small orders only).
    std::vector<std::vector<SuperPoly>> x0(n, std::vector<SuperPoly>(n, SuperPoly(ctx)));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            x0[r][c] = SuperPoly::constant(ctx, x.at(r, c).constant_term());
    // cofactor inverse of the scalar matrix
    SuperPoly d = even_det(x0, ctx);
    Scalar dinv = d.constant_term().inverse();
    std::vector<std::vector<SuperPoly>> x0inv(n, std::vector<SuperPoly>(n, SuperPoly(ctx)));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            std::vector<std::vector<SuperPoly>> minor;
            for (std::size_t i = 0; i < n; ++i) {
                if (i == c) continue;
                std::vector<SuperPoly> row;
                for (std::size_t j = 0; j < n; ++j)
                    if (j != r) row.push_back(x0[i][j]);
                minor.push_back(std::move(row));
            }
            SuperPoly cof = even_det(minor, ctx).scaled(dinv);
            x0inv[r][c] = ((r + c) % 2) ? -cof : cof;
        }
    // N = x0inv * X - 1 (nilpotent entries), then sum the series.
    auto mat_mul = [&](const std::vector<std::vector<SuperPoly>>& a,
                       const SuperMatrix& b) {
        std::vector<std::vector<SuperPoly>> r(n, std::vector<SuperPoly>(n, SuperPoly(ctx)));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                SuperPoly s(ctx);
                for (std::size_t j = 0; j < n; ++j) s += mul(a[i][j], b.at(j, k));
                r[i][k] = s;
            }
        return r;
    };
    auto mm = [&](const std::vector<std::vector<SuperPoly>>& a,
                  const std::vector<std::vector<SuperPoly>>& b) {
        std::vector<std::vector<SuperPoly>> r(n, std::vector<SuperPoly>(n, SuperPoly(ctx)));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                SuperPoly s(ctx);
                for (std::size_t j = 0; j < n; ++j) s += mul(a[i][j], b[j][k]);
                r[i][k] = s;
            }
        return r;
    };
    auto nmat = mat_mul(x0inv, x);
    for (std::size_t i = 0; i < n; ++i)
        nmat[i][i] -= SuperPoly::constant(ctx, Scalar::one());
    // (1 + N)^-1 = sum (-N)^k, finite because N is nilpotent.
    std::vector<std::vector<SuperPoly>> acc(n, std::vector<SuperPoly>(n, SuperPoly(ctx)));
    for (std::size_t i = 0; i < n; ++i) acc[i][i] = SuperPoly::constant(ctx, Scalar::one());
    std::vector<std::vector<SuperPoly>> pw = nmat;
    int sign = -1;
    auto nonzero = [&](const std::vector<std::vector<SuperPoly>>& a) {
        for (auto& row : a)
            for (auto& e : row)
                if (!e.is_zero()) return true;
        return false;
    };
    std::size_t guard = 0;
    while (nonzero(pw)) {
        require(++guard <= 2 * x.context().size() + 2, "soul series failed to terminate");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                acc[i][j] += (sign < 0) ? -pw[i][j] : pw[i][j];
        pw = mm(pw, nmat);
        sign = -sign;
    }
    auto full = mm(acc, x0inv);
    SuperMatrix r(ctx, x.p(), x.q());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r.set(i, j, full[i][j]);
    return r;
}

SuperPoly berezinian(const SuperMatrix& x) {
    const Context& ctx = x.context();
    // Reject with the offending block named.
    for (bool top : {true, false}) {
        auto blk = block(x, top, top);
        for (auto& row : blk)
            for (auto& e : row) e = e.body();
        SuperPoly d = even_det(blk, ctx);
        Scalar c = d.constant_term();
        bool ok = !c.is_zero() && c.is_monomial() &&
                  (d - SuperPoly::constant(ctx, c)).is_zero();
        require(ok, std::string("berezinian: body of block ") + (top ? "A" : "D") +
                        " is singular");
    }
    auto a = block(x, true, true);
    auto b = block(x, true, false);
    auto c = block(x, false, true);
    auto dd = block(x, false, false);
    // D^-1 via even_inverse-based cofactor route: invert D as a matrix over
    // the even subalgebra: D^-1 = adj(D) * det(D)^-1.
    std::size_t q = x.q();
    SuperPoly detD = even_det(dd, ctx);
    SuperPoly detDinv = even_inverse(detD);
    std::vector<std::vector<SuperPoly>> dinv(q, std::vector<SuperPoly>(q, SuperPoly(ctx)));
    for (std::size_t r = 0; r < q; ++r)
        for (std::size_t cc = 0; cc < q; ++cc) {
            std::vector<std::vector<SuperPoly>> minor;
            for (std::size_t i = 0; i < q; ++i) {
                if (i == cc) continue;
                std::vector<SuperPoly> row;
                for (std::size_t j = 0; j < q; ++j)
                    if (j != r) row.push_back(dd[i][j]);
                minor.push_back(std::move(row));
            }
            SuperPoly cof = mul(even_det(minor, ctx), detDinv);
            dinv[r][cc] = ((r + cc) % 2) ? -cof : cof;
        }
    // A - B D^-1 C
    std::size_t p = x.p();
    std::vector<std::vector<SuperPoly>> schur = a;
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j) {
            SuperPoly s(ctx);
            for (std::size_t k = 0; k < q; ++k)
                for (std::size_t l = 0; l < q; ++l)
                    s += mul(b[i][k], mul(dinv[k][l], c[l][j]));
            schur[i][j] -= s;
        }
    return mul(even_det(schur, ctx), detDinv);
}

MultiplicativityReport check_multiplicative(const SuperMatrix& x, const SuperMatrix& y) {
    MultiplicativityReport rep{false, SuperPoly(x.context())};
    SuperPoly lhs = berezinian(x * y);
    SuperPoly rhs = mul(berezinian(x), berezinian(y));
    rep.residual = lhs - rhs;
    rep.ok = rep.residual.is_zero();
    return rep;
}

} // namespace bvk
