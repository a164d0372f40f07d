#pragma once
#include <vector>

#include "bvk/linalg.hpp"
#include "bvk/poly.hpp"

namespace bvk {

// Normalized Gaussian reference weight on a subset of even generators:
// E[1] = 1, moments by Wick pairing over the covariance.
class GaussianWeight {
  public:
    GaussianWeight() = default;
    GaussianWeight(const Context& ctx, std::vector<std::string> even_vars, QMat covariance);

    const std::vector<std::string>& vars() const { return vars_; }
    const QMat& covariance() const { return cov_; }
    bool covers(const std::string& name) const;
    bool empty() const { return vars_.empty(); }

    // Entry of the inverse covariance (computed once at construction).
    const QMat& inverse_covariance() const { return cov_inv_; }

  private:
    std::vector<std::string> vars_;
    QMat cov_;
    QMat cov_inv_;
};

// Berezin integral over the listed odd generators, processed first to last:
// int f dtheta_1 ... dtheta_n extracts the coefficient of theta_1...theta_n
// with the sign fixed by int theta_1...theta_n dtheta_1...dtheta_n = +1.
SuperPoly berezin_integrate(const SuperPoly& f, const std::vector<std::string>& odd_vars);

// Isserlis/Wick evaluation of the normalized Gaussian expectation over the
// weight's even variables; other generators pass through.
SuperPoly gaussian_expect(const SuperPoly& f, const GaussianWeight& w);

// Berezin over odd_vars then Gaussian over w (Fubini; order irrelevant).
SuperPoly bv_measure_integrate(const SuperPoly& f, const std::vector<std::string>& odd_vars,
                               const GaussianWeight& w);

} // namespace bvk
