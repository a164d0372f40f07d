#pragma once
#include <optional>

#include "bvk/cartan.hpp"
#include "bvk/poly.hpp"

namespace bvk {

// Constant-coefficient graded Poisson structure of bracket degree k:
// {f,g} = sum (f <-d_i) (w^-1)^{ij} (d_j-> g), entries constrained by
// grading and graded antisymmetry.
class GradedPoisson {
  public:
    GradedPoisson(Context ctx, int degree) : ctx_(std::move(ctx)), degree_(degree) {}

    const Context& context() const { return ctx_; }
    int degree() const { return degree_; }

    // Set the pair {u, v} = c; the transposed entry is filled in with the
    // graded-antisymmetry sign, so Darboux structures need one call per pair.
    void add_pair(const std::string& u, const std::string& v, const Scalar& c = Scalar::one());

    const std::vector<std::tuple<std::size_t, std::size_t, Scalar>>& entries() const {
        return entries_;
    }

    SuperPoly bracket(const SuperPoly& f, const SuperPoly& g) const;

  private:
    Context ctx_;
    int degree_;
    std::vector<std::tuple<std::size_t, std::size_t, Scalar>> entries_;
};

// Darboux odd symplectic context: pairs (q, p) with opposite parity and
// gh(q) + gh(p) = -1. Context generators outside every pair are formal
// external parameters: the Laplacian, bracket and integration ignore them.
class BVSpace {
  public:
    BVSpace(Context ctx, std::vector<std::pair<std::string, std::string>> pairs);

    static BVSpace make(const std::vector<std::pair<Generator, Generator>>& pairs,
                        std::string label = "", const std::vector<Generator>& params = {});

    const Context& context() const { return ctx_; }
    const std::vector<std::pair<std::size_t, std::size_t>>& pairs() const { return pairs_; }
    bool is_q(std::size_t gen_index) const;
    bool is_p(std::size_t gen_index) const;
    bool is_parameter(std::size_t gen_index) const;
    std::size_t conjugate(std::size_t gen_index) const;

    // The antibracket as a degree-(+1) GradedPoisson ((q,p) -> +1, (p,q) -> -1).
    const GradedPoisson& antibracket_structure() const { return anti_; }

    // omega = sum dq dp on the doubled context.
    Form symplectic_form() const;

  private:
    Context ctx_;
    std::vector<std::pair<std::size_t, std::size_t>> pairs_;
    GradedPoisson anti_{Context(), 1};
};

// Delta = sum (-1)^{|q_i|} d/dq_i d/dp_i (p-derivative first).
SuperPoly bv_laplacian(const BVSpace& v, const SuperPoly& f);

SuperPoly antibracket(const BVSpace& v, const SuperPoly& f, const SuperPoly& g);

// Oracle route: the Leibniz defect of Delta,
// (f,g) = (-1)^{|f|} (Delta(fg) - Delta f g - (-1)^{|f|} f Delta g),
// applied per homogeneous part of f. Tests compare it to antibracket().
SuperPoly antibracket_via_defect(const BVSpace& v, const SuperPoly& f, const SuperPoly& g);

// The Hamiltonian vector field fixed by iota_Q omega = dS (global sign
// convention of this project): Q(g) = (-1)^{|S|} (S, g).
VectorField hamiltonian_vf(const BVSpace& v, const SuperPoly& s);
VectorField hamiltonian_vf(const GradedPoisson& p, const SuperPoly& s);

struct MasterReport {
    bool pass = false;
    SuperPoly residual;                      // (S,S) for CME
    std::optional<int> first_failing_order;  // QME: hbar order of first failure
};

// (S,S) = 0 for even S of ghost number 0.
MasterReport check_cme(const BVSpace& v, const SuperPoly& s);

// 1/2 (S,S) - i hbar Delta S = 0, reported order by order in hbar.
MasterReport check_qme(const BVSpace& v, const SuperPoly& s);

struct RelaxedForms {
    Form check_alpha;           // iota_Q omega - dS
    Form check_omega;           // d check_alpha
    bool check_omega_matches;   // check_omega == -L_Q omega
    bool lq_check_omega_zero;   // L_Q check_omega == 0
    std::optional<bool> mcme_ok;          // iota_Q iota_Q omega == 2 S_check
    std::optional<bool> euler_recovers;   // S_check == iota_E iota_Q check_omega
};

// Relaxed BV checks for a closed odd 2-form omega (possibly degenerate), an
// odd degree-1 field Q with [Q,Q] = 0, and an action S. When s_boundary is
// supplied, the mCME identity and the Euler-field recovery are verified.
RelaxedForms relaxed_check_forms(const Form& omega, const VectorField& q, const SuperPoly& s,
                                 const std::optional<SuperPoly>& s_boundary = std::nullopt);

} // namespace bvk
