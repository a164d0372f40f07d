#include "bvk/gauge_fix.hpp"

#include <functional>
#include <set>

namespace bvk {

GaugeFermion::GaugeFermion(const BVSpace& v, SuperPoly p) : psi(std::move(p)) {
    require_same_context(v.context(), psi.context(), "gauge fermion");
    for (auto& [qi, pi] : v.pairs())
        require(!psi.depends_on(pi), "gauge fermion must not involve momentum '" +
                                         v.context().gen(pi).name + "'");
    if (!psi.is_zero()) {
        require(psi.is_homogeneous_parity() && psi.parity() == Parity::odd,
                "gauge fermion must be odd");
        require(psi.is_homogeneous_gh() && psi.ghost_number() == -1,
                "gauge fermion must have ghost number -1");
    }
}

FiberSplit FiberSplit::of(const BVSpace& v, const std::vector<std::size_t>& integrated_pairs) {
    FiberSplit s;
    std::set<std::size_t> integ(integrated_pairs.begin(), integrated_pairs.end());
    for (auto i : integ) require(i < v.pairs().size(), "pair index out of range");
    for (std::size_t i = 0; i < v.pairs().size(); ++i)
        (integ.count(i) ? s.integrated : s.retained).push_back(i);
    return s;
}

SuperPoly restrict_to_lagrangian(const SuperPoly& f, const GaugeFermion& psi, const BVSpace& v) {
    std::map<std::string, SuperPoly> bind;
    for (auto& [qi, pi] : v.pairs())
        bind.emplace(v.context().gen(pi).name, left_derive(psi.psi, qi));
    return substitute(f, bind);
}

SuperPoly weighted_laplacian(const BVSpace& v, const GaussianWeight& w, const SuperPoly& f) {
    SuperPoly r = bv_laplacian(v, f);
    if (w.empty()) return r;
    const Context& ctx = v.context();
    const auto& vars = w.vars();
    for (std::size_t a = 0; a < vars.size(); ++a) {
        std::size_t qi = ctx.index_of(vars[a]);
        require(v.is_q(qi), "gaussian weight variable '" + vars[a] + "' is not a q-generator");
        SuperPoly dp = left_derive(f, v.conjugate(qi));
        if (dp.is_zero()) continue;
        // (Sigma^-1 q)_a
        SuperPoly lin(ctx);
        for (std::size_t b = 0; b < vars.size(); ++b) {
            const Rat& c = w.inverse_covariance().at(a, b);
            if (c != 0) lin += SuperPoly::generator(ctx, vars[b]).scaled(Scalar(c));
        }
        r -= mul(lin, dp);
    }
    return r;
}

SuperPoly bv_integrate(const SuperPoly& f, const GaugeFermion& psi, const BVSpace& v,
                       const GaussianWeight& w) {
    const Context& ctx = v.context();
    SuperPoly restricted = restrict_to_lagrangian(f, psi, v);
    std::vector<std::string> odd_qs;
    for (auto& [qi, pi] : v.pairs()) {
        if (ctx.gen(qi).odd()) {
            odd_qs.push_back(ctx.gen(qi).name);
        } else {
            require(w.covers(ctx.gen(qi).name),
                    "even q '" + ctx.gen(qi).name + "' not covered by the gaussian weight");
        }
    }
    return bv_measure_integrate(restricted, odd_qs, w);
}

ThmReport check_thm_bv1(const SuperPoly& g, const std::vector<GaugeFermion>& psis,
                        const BVSpace& v, const GaussianWeight& w) {
    ThmReport rep;
    SuperPoly dg = weighted_laplacian(v, w, g);
    rep.pass = true;
    for (auto& psi : psis) {
        SuperPoly val = bv_integrate(dg, psi, v, w);
        if (!val.is_zero()) rep.pass = false;
        rep.values.push_back(std::move(val));
    }
    return rep;
}

ThmReport check_thm_bv2(const SuperPoly& f, const std::vector<GaugeFermion>& psis,
                        const BVSpace& v, const GaussianWeight& w,
                        const std::vector<std::string>& formal_params) {
    ThmReport rep;
    rep.hypothesis_ok = weighted_laplacian(v, w, f).is_zero();
    rep.pass = true;
    for (auto& psi : psis) rep.values.push_back(bv_integrate(f, psi, v, w));
    // All sampled values must agree...
    for (std::size_t i = 1; i < rep.values.size(); ++i)
        if (!(rep.values[i] == rep.values[0])) rep.pass = false;
    // ...and the symbolic members must not depend on fermion parameters.
    for (auto& val : rep.values)
        for (auto& p : formal_params)
            if (val.depends_on(p)) {
                rep.pass = false;
                rep.dependence.push_back(p);
            }
    if (!rep.hypothesis_ok) rep.pass = false;
    return rep;
}

SuperPoly bv_pushforward(const SuperPoly& f, const GaugeFermion& psi, const BVSpace& v,
                         const FiberSplit& split, const GaussianWeight& w) {
    const Context& ctx = v.context();
    // psi must live on the integrated q's only
    std::set<std::size_t> integ(split.integrated.begin(), split.integrated.end());
    for (std::size_t pair = 0; pair < v.pairs().size(); ++pair) {
        auto [qi, pi] = v.pairs()[pair];
        if (!integ.count(pair))
            require(!psi.psi.depends_on(qi),
                    "fermion touches retained variable '" + ctx.gen(qi).name + "'");
    }
    // restrict only the integrated momenta
    std::map<std::string, SuperPoly> bind;
    std::vector<std::string> odd_qs;
    for (auto pair : split.integrated) {
        auto [qi, pi] = v.pairs()[pair];
        bind.emplace(ctx.gen(pi).name, left_derive(psi.psi, qi));
        if (ctx.gen(qi).odd()) {
            odd_qs.push_back(ctx.gen(qi).name);
        } else {
            require(w.covers(ctx.gen(qi).name), "even integrated q '" + ctx.gen(qi).name +
                                                     "' not covered by the gaussian weight");
        }
    }
    for (auto pair : split.retained) {
        auto [qi, pi] = v.pairs()[pair];
        require(!w.covers(ctx.gen(qi).name),
                "gaussian weight covers retained variable '" + ctx.gen(qi).name + "'");
    }
    SuperPoly restricted = substitute(f, bind);
    SuperPoly result = bv_measure_integrate(restricted, odd_qs, w);
    for (auto pair : split.integrated) {
        auto [qi, pi] = v.pairs()[pair];
        require(!result.depends_on(qi) && !result.depends_on(pi),
                "pushforward result still depends on integrated block");
    }
    return result;
}

SuperPoly block_laplacian(const BVSpace& v, const std::vector<std::size_t>& pair_indices,
                          const GaussianWeight& w, const SuperPoly& f) {
    const Context& ctx = v.context();
    SuperPoly r(ctx);
    for (auto pair : pair_indices) {
        auto [qi, pi] = v.pairs()[pair];
        SuperPoly d = left_derive(left_derive(f, pi), qi);
        if (!d.is_zero()) r += ctx.gen(qi).odd() ? -d : d;
        if (!ctx.gen(qi).odd() && w.covers(ctx.gen(qi).name)) {
            SuperPoly dp = left_derive(f, pi);
            if (dp.is_zero()) continue;
            const auto& vars = w.vars();
            std::size_t a = 0;
            while (vars[a] != ctx.gen(qi).name) ++a;
            SuperPoly lin(ctx);
            for (std::size_t b = 0; b < vars.size(); ++b) {
                const Rat& c = w.inverse_covariance().at(a, b);
                if (c != 0) lin += SuperPoly::generator(ctx, vars[b]).scaled(Scalar(c));
            }
            r -= mul(lin, dp);
        }
    }
    return r;
}

std::optional<SuperPoly> solve_laplacian_primitive(const BVSpace& v,
                                                   const std::vector<std::size_t>& pair_indices,
                                                   const GaussianWeight& w,
                                                   const SuperPoly& rhs) {
    const Context& ctx = v.context();
    int deg = rhs.total_degree() + 2;
    // enumerate monomials of total degree <= deg (odd exponents 0/1)
    std::vector<Monomial> basis;
    Monomial m = Monomial::unit(ctx.size());
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
        if (i == ctx.size()) {
            basis.push_back(m);
            return;
        }
        int cap = ctx.gen(i).odd() ? 1 : left;
        for (int e = 0; e <= cap; ++e) {
            m.exps[i] = std::uint16_t(e);
            rec(i + 1, left - e);
        }
        m.exps[i] = 0;
    };
    rec(0, deg);

    // The unknown Z = sum over basis with hbar-free rational coefficients is
    // enough for our uses (rhs coefficients live in Q(i) x hbar powers, so
    // solve separately per (hbar power, re/im) via two passes: assemble the
    // linear map on monomials and solve column-wise over Q for each scalar
    // component of the rhs).
    std::map<Monomial, std::size_t> row_index;
    std::vector<Monomial> rows;
    auto row_of = [&](const Monomial& mm) {
        auto it = row_index.find(mm);
        if (it == row_index.end()) {
            it = row_index.emplace(mm, rows.size()).first;
            rows.push_back(mm);
        }
        return it->second;
    };
    std::vector<std::map<std::size_t, Rat>> cols(basis.size());
    for (std::size_t c = 0; c < basis.size(); ++c) {
        SuperPoly img = block_laplacian(v, pair_indices, w,
                                        SuperPoly::monomial(ctx, basis[c], Scalar::one()));
        for (auto& [mm, s] : img.terms()) {
            GaussRat g = s.coeff(0);
            require(g.im == 0, "laplacian image must be rational");
            cols[c][row_of(mm)] = g.re;
        }
    }
    for (auto& [mm, s] : rhs.terms()) row_of(mm);

    // split rhs by hbar power and by re/im, solve each, recombine
    SuperPoly z(ctx);
    std::map<int, std::pair<std::vector<Rat>, std::vector<Rat>>> rhs_parts;
    for (auto& [mm, s] : rhs.terms()) {
        std::size_t r = row_of(mm);
        for (auto& [pw, g] : s.terms()) {
            auto& slot = rhs_parts
                             .try_emplace(pw, std::vector<Rat>(rows.size(), Rat(0)),
                                          std::vector<Rat>(rows.size(), Rat(0)))
                             .first->second;
            slot.first[r] = g.re;
            slot.second[r] = g.im;
        }
    }
    // rebuild matrix with the final row count
    QMat a2(rows.size(), basis.size());
    for (std::size_t c = 0; c < basis.size(); ++c)
        for (auto& [r, val] : cols[c]) a2.at(r, c) = val;
    for (auto& [pw, parts] : rhs_parts) {
        parts.first.resize(rows.size(), Rat(0));
        parts.second.resize(rows.size(), Rat(0));
        auto xre = solve(a2, parts.first);
        auto xim = solve(a2, parts.second);
        if (!xre || !xim) return std::nullopt;
        for (std::size_t c = 0; c < basis.size(); ++c) {
            GaussRat g((*xre)[c], (*xim)[c]);
            if (!g.is_zero()) z += SuperPoly::monomial(ctx, basis[c], Scalar::term(pw, g));
        }
    }
    return z;
}

} // namespace bvk
