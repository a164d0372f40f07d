#include "bvk/berezin.hpp"

#include <set>

namespace bvk {

GaussianWeight::GaussianWeight(const Context& ctx, std::vector<std::string> even_vars,
                               QMat covariance)
    : vars_(std::move(even_vars)), cov_(std::move(covariance)) {
    std::set<std::string> seen;
    for (auto& v : vars_) {
        require(!ctx.gen(ctx.index_of(v)).odd(), "gaussian weight over odd generator '" + v + "'");
        require(seen.insert(v).second, "duplicate gaussian variable '" + v + "'");
    }
    require(cov_.rows() == vars_.size() && cov_.cols() == vars_.size(),
            "covariance dimension mismatch");
    require(positive_definite(cov_), "covariance must be symmetric positive definite");
    if (!vars_.empty()) cov_inv_ = *inverse(cov_);
}

bool GaussianWeight::covers(const std::string& name) const {
    for (auto& v : vars_)
        if (v == name) return true;
    return false;
}

SuperPoly berezin_integrate(const SuperPoly& f, const std::vector<std::string>& odd_vars) {
    const Context& ctx = f.context();
    std::set<std::string> seen;
    SuperPoly r = f;
    for (auto& v : odd_vars) {
        require(ctx.gen(ctx.index_of(v)).odd(),
                "berezin integration over even generator '" + v + "'");
        require(seen.insert(v).second, "duplicate integration variable '" + v + "'");
        r = left_derive(r, v);
    }
    return r;
}

namespace {

// Sum over perfect pairings of the factor list, product of covariances.
Rat wick_sum(std::vector<std::size_t>& factors, const QMat& cov) {
    if (factors.empty()) return Rat(1);
    if (factors.size() % 2) return Rat(0);
    std::size_t a = factors[0];
    Rat total(0);
    for (std::size_t j = 1; j < factors.size(); ++j) {
        std::size_t b = factors[j];
        std::vector<std::size_t> rest;
        rest.reserve(factors.size() - 2);
        for (std::size_t k = 1; k < factors.size(); ++k)
            if (k != j) rest.push_back(factors[k]);
        total += cov.at(a, b) * wick_sum(rest, cov);
    }
    return total;
}

} // namespace

SuperPoly gaussian_expect(const SuperPoly& f, const GaussianWeight& w) {
    const Context& ctx = f.context();
    if (w.empty()) return f;
    std::vector<std::size_t> var_index;
    for (auto& v : w.vars()) var_index.push_back(ctx.index_of(v));

    SuperPoly r(ctx);
    for (auto& [m, c] : f.terms()) {
        // split off the weight variables (even: no Koszul signs involved)
        std::vector<std::size_t> factors;
        Monomial rest = m;
        for (std::size_t k = 0; k < var_index.size(); ++k) {
            for (unsigned e = 0; e < m.exps[var_index[k]]; ++e) factors.push_back(k);
            rest.exps[var_index[k]] = 0;
        }
        Rat moment = wick_sum(factors, w.covariance());
        if (moment == 0) continue;
        r += SuperPoly::monomial(ctx, rest, c * Scalar(moment));
    }
    return r;
}

SuperPoly bv_measure_integrate(const SuperPoly& f, const std::vector<std::string>& odd_vars,
                               const GaussianWeight& w) {
    for (auto& v : odd_vars)
        require(!w.covers(v), "variable '" + v + "' appears in both odd and gaussian blocks");
    return gaussian_expect(berezin_integrate(f, odd_vars), w);
}

} // namespace bvk
