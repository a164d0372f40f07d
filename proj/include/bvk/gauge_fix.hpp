#pragma once
#include <optional>
#include <vector>

#include "bvk/berezin.hpp"
#include "bvk/bv_core.hpp"

namespace bvk {

// Odd gh(-1) function of the q-generators only.
struct GaugeFermion {
    SuperPoly psi;

    GaugeFermion(const BVSpace& v, SuperPoly p);
    static GaugeFermion zero(const BVSpace& v) { return GaugeFermion(v, SuperPoly(v.context())); }
};

// Partition of a BVSpace's pairs into retained (primed) and integrated
// (double-primed) blocks.
struct FiberSplit {
    std::vector<std::size_t> retained;   // pair indices
    std::vector<std::size_t> integrated; // pair indices

    static FiberSplit of(const BVSpace& v, const std::vector<std::size_t>& integrated_pairs);
};

// Substitute p_i -> dPsi/dq_i (left derivative) for every pair of v.
SuperPoly restrict_to_lagrangian(const SuperPoly& f, const GaugeFermion& psi, const BVSpace& v);

// Gaussian-measure-compatible Laplacian: the BV Laplacian corrected by the
// divergence of the normalized Gaussian weight on the even q-block,
//   Delta_w f = Delta f - sum_i (Sigma^-1 q)_i dF/dp_i,
// which is the operator that the weighted integral kills exactly (the Stein
// identity). With no even q's it reduces to the plain Laplacian.
SuperPoly weighted_laplacian(const BVSpace& v, const GaussianWeight& w, const SuperPoly& f);

// int_{L_Psi} f: restrict, Berezin over odd q's (pair order), Gaussian
// expectation over even q's.
SuperPoly bv_integrate(const SuperPoly& f, const GaugeFermion& psi, const BVSpace& v,
                       const GaussianWeight& w);

struct ThmReport {
    bool pass = false;
    bool hypothesis_ok = true;             // thm 2: Delta f = 0
    std::vector<SuperPoly> values;         // per-fermion integrals
    std::vector<std::string> dependence;   // thm 2: offending parameter names
};

// Theorem part 1: int_{L_Psi} Delta_w g = 0 for every fermion.
ThmReport check_thm_bv1(const SuperPoly& g, const std::vector<GaugeFermion>& psis,
                        const BVSpace& v, const GaussianWeight& w);

// Theorem part 2: for Delta_w f = 0 the integral is independent of the
// gauge fermion; with formal fermion coefficients this is exact
// parameter-independence of the result polynomial.
ThmReport check_thm_bv2(const SuperPoly& f, const std::vector<GaugeFermion>& psis,
                        const BVSpace& v, const GaussianWeight& w,
                        const std::vector<std::string>& formal_params = {});

// Fiber BV integral over the double-primed block only; psi may depend only
// on integrated q's. Result is a polynomial in the retained variables (and
// any external parameters).
SuperPoly bv_pushforward(const SuperPoly& f, const GaugeFermion& psi, const BVSpace& v,
                         const FiberSplit& split, const GaussianWeight& w);

// Laplacian restricted to a block of pairs (weighted on its even q's).
SuperPoly block_laplacian(const BVSpace& v, const std::vector<std::size_t>& pair_indices,
                          const GaussianWeight& w, const SuperPoly& f);

// Solve Delta_block(Z) = rhs for Z by exact linear algebra on the monomial
// basis of degree <= rhs degree + 2. Returns the primitive when one exists.
std::optional<SuperPoly> solve_laplacian_primitive(const BVSpace& v,
                                                   const std::vector<std::size_t>& pair_indices,
                                                   const GaussianWeight& w,
                                                   const SuperPoly& rhs);

} // namespace bvk
