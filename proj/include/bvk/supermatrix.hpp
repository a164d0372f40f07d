#pragma once
#include <vector>

#include "bvk/poly.hpp"

namespace bvk {

// Even block supermatrix (A B; C D) over a shared Grassmann context:
// A (p x p) and D (q x q) carry even entries, B (p x q) and C (q x p) odd.
class SuperMatrix {
  public:
    SuperMatrix(Context ctx, std::size_t p, std::size_t q);

    const Context& context() const { return ctx_; }
    std::size_t p() const { return p_; }
    std::size_t q() const { return q_; }
    std::size_t order() const { return p_ + q_; }

    // Whole-matrix indexing; (r, c) with r, c < p+q. Entry parities are
    // enforced: diag blocks even, off-diag blocks odd.
    const SuperPoly& at(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, const SuperPoly& v);

    static SuperMatrix identity(const Context& ctx, std::size_t p, std::size_t q);
    SuperMatrix operator*(const SuperMatrix& o) const;
    bool operator==(const SuperMatrix& o) const;

  private:
    Context ctx_;
    std::size_t p_, q_;
    std::vector<SuperPoly> e_;
};

// Inverse of an even element u = s(1 + n) with s an invertible scalar and n
// nilpotent; rejects elements whose scalar part is not a unit.
SuperPoly even_inverse(const SuperPoly& u);

// Determinant over the commutative even subalgebra (Laplace expansion).
SuperPoly even_det(const std::vector<std::vector<SuperPoly>>& m, const Context& ctx);

// Oracle: full Leibniz permutation-sum determinant (tests compare).
SuperPoly even_det_leibniz(const std::vector<std::vector<SuperPoly>>& m, const Context& ctx);

// True iff body(A) and body(D) are invertible (unit scalar determinant).
bool is_invertible(const SuperMatrix& x);

// Inverse over the Grassmann algebra: body inverse composed with the finite
// geometric series in the nilpotent soul.
SuperMatrix inverse(const SuperMatrix& x);

// Ber(X) = det(A - B D^-1 C) / det(D); requires is_invertible.
SuperPoly berezinian(const SuperMatrix& x);

struct MultiplicativityReport {
    bool ok = false;
    SuperPoly residual; // berezinian(XY) - berezinian(X) berezinian(Y)
};

MultiplicativityReport check_multiplicative(const SuperMatrix& x, const SuperMatrix& y);

} // namespace bvk
