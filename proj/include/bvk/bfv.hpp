#pragma once
#include <optional>
#include <string>

#include "bvk/bv_core.hpp"
#include "bvk/linalg.hpp"

namespace bvk {

// Even degree-0 Poisson base (Darboux pairs of even gh-0 generators) with a
// list of even gh-0 polynomial constraints phi_i and optional structure
// functions f[i][j][k] with {phi_i, phi_j} = sum_k f[i][j][k] phi_k.
struct ConstraintSystem {
    GradedPoisson base;
    std::vector<SuperPoly> constraints;
    std::optional<std::vector<std::vector<std::vector<SuperPoly>>>> structure_functions;
};

// Canonical T*R^n base: pairs (x1,p1)...(xn,pn), all even gh 0.
GradedPoisson cotangent_base(int n, Context* out_ctx = nullptr);

struct ClosureReport {
    bool ok = true;
    std::optional<std::pair<std::size_t, std::size_t>> offending_pair;
    SuperPoly remainder;
};

// {phi_i, phi_j} in the ideal (phi): exact against supplied structure
// functions, otherwise decided degreewise by linear algebra.
ClosureReport check_closure(const ConstraintSystem& cs, int degree_margin = 2);

struct BFVData {
    Context extended;        // base + ghosts c^i (gh +1) + antighosts b_i (gh -1)
    GradedPoisson bracket;   // extended even bracket
    SuperPoly action;        // S, odd, gh +1
    int certified_b_degree = 0; // {S,S} vanishes at b-degrees <= this
    bool exact = false;         // {S,S} = 0 identically
    std::size_t n_constraints = 0;
};

// Ghost extension: S0 = sum c^i phi_i; with constant structure functions the
// closed-form quadratic-ghost action is emitted and re-verified exactly.
BFVData ghost_extend(const ConstraintSystem& cs);

struct CorrectionOutcome {
    enum Kind { solved, obstruction, cutoff_exceeded } kind = solved;
    BFVData data;
    std::string detail;
    std::vector<std::size_t> solution_space_dims; // affine solution dim per solved order
};

// Solve, order by order in antighost degree, for corrections making {S,S}
// vanish through max_b_degree; corrections are sought with base degree
// bounded by poly_degree_cutoff.
CorrectionOutcome correct_order_by_order(const ConstraintSystem& cs, const BFVData& start,
                                         int max_b_degree, int poly_degree_cutoff);

// The BFV differential Q(f) = {f, S}.
SuperPoly bfv_q(const BFVData& data, const SuperPoly& f);

struct CohomologyResult {
    std::size_t dimension = 0;
    std::vector<SuperPoly> representatives;
};

// ker/im of Q on ghost-number-0 polynomials of degree <= cutoff, by exact
// linear algebra on the monomial basis.
CohomologyResult q_cohomology_degree0(const BFVData& data, int poly_degree_cutoff);

// Direct N(I)/I dimension at the cutoff; the oracle for q_cohomology_degree0.
std::size_t n_mod_i_dimension(const ConstraintSystem& cs, int poly_degree_cutoff);

} // namespace bvk
