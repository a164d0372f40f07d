#include "bvk/bv_core.hpp"

#include <algorithm>
#include <functional>

namespace bvk {

void GradedPoisson::add_pair(const std::string& u, const std::string& v, const Scalar& c) {
    std::size_t i = ctx_.index_of(u);
    std::size_t j = ctx_.index_of(v);
    require(i != j, "poisson pair must involve two generators");
    const Generator &gu = ctx_.gen(i), &gv = ctx_.gen(j);
    require(gu.gh + gv.gh == -degree_,
            "pair (" + u + "," + v + "): ghost numbers must sum to " + std::to_string(-degree_));
    entries_.emplace_back(i, j, c);
    // transposed entry from graded antisymmetry:
    // {v,u} = -(-1)^{(|u|+k)(|v|+k)} {u,v}
    int pu = (int(gu.parity()) + degree_) & 1;
    int pv = (int(gv.parity()) + degree_) & 1;
    Scalar ct = (pu && pv) ? c : -c;
    entries_.emplace_back(j, i, ct);
}

SuperPoly GradedPoisson::bracket(const SuperPoly& f, const SuperPoly& g) const {
    require_same_context(ctx_, f.context(), "bracket");
    require_same_context(ctx_, g.context(), "bracket");
    SuperPoly r(ctx_);
    for (auto& [i, j, c] : entries_) {
        SuperPoly lf = right_derive(f, i);
        if (lf.is_zero()) continue;
        SuperPoly rg = left_derive(g, j);
        if (rg.is_zero()) continue;
        r += mul(lf, rg).scaled(c);
    }
    return r;
}

BVSpace::BVSpace(Context ctx, std::vector<std::pair<std::string, std::string>> pairs)
    : ctx_(std::move(ctx)), anti_(ctx_, 1) {
    std::vector<bool> used(ctx_.size(), false);
    for (auto& [qn, pn] : pairs) {
        std::size_t qi = ctx_.index_of(qn), pi = ctx_.index_of(pn);
        const Generator &q = ctx_.gen(qi), &p = ctx_.gen(pi);
        require(q.parity() != p.parity(),
                "pair (" + qn + "," + pn + "): parities must be opposite");
        require(q.gh + p.gh == -1,
                "pair (" + qn + "," + pn + "): ghost numbers must sum to -1");
        require(!used[qi] && !used[pi], "generator reused across pairs");
        used[qi] = used[pi] = true;
        pairs_.emplace_back(qi, pi);
        anti_.add_pair(qn, pn);
    }
}

BVSpace BVSpace::make(const std::vector<std::pair<Generator, Generator>>& pairs,
                      std::string label, const std::vector<Generator>& params) {
    std::vector<Generator> gens;
    std::vector<std::pair<std::string, std::string>> names;
    for (auto& [q, p] : pairs) {
        gens.push_back(q);
        gens.push_back(p);
        names.emplace_back(q.name, p.name);
    }
    gens.insert(gens.end(), params.begin(), params.end());
    return BVSpace(Context(std::move(gens), std::move(label)), std::move(names));
}

bool BVSpace::is_q(std::size_t i) const {
    for (auto& [q, p] : pairs_)
        if (q == i) return true;
    return false;
}

bool BVSpace::is_p(std::size_t i) const {
    for (auto& [q, p] : pairs_)
        if (p == i) return true;
    return false;
}

bool BVSpace::is_parameter(std::size_t i) const { return !is_q(i) && !is_p(i); }

std::size_t BVSpace::conjugate(std::size_t i) const {
    for (auto& [q, p] : pairs_) {
        if (q == i) return p;
        if (p == i) return q;
    }
    fail("generator not in any pair");
}

Form BVSpace::symplectic_form() const {
    // omega = sum (-1)^{|q_i|} dq_i dp_i. The parity-dependent sign is what
    // makes iota_Q omega = dS hold for Q(g) = (-1)^{|S|} (S, g) with the
    // antibracket normalized against the Leibniz defect of the Laplacian
    // Delta = sum (-1)^{|q_i|} d_q d_p; it is derived, not chosen.
    Context d = ctx_.doubled();
    Form w(d);
    for (auto& [qi, pi] : pairs_) {
        Form term = mul(d_generator(d, ctx_.gen(qi).name), d_generator(d, ctx_.gen(pi).name));
        w += ctx_.gen(qi).odd() ? -term : term;
    }
    return w;
}

SuperPoly bv_laplacian(const BVSpace& v, const SuperPoly& f) {
    require_same_context(v.context(), f.context(), "bv_laplacian");
    SuperPoly r(v.context());
    for (auto& [qi, pi] : v.pairs()) {
        SuperPoly d = left_derive(left_derive(f, pi), qi);
        if (d.is_zero()) continue;
        r += v.context().gen(qi).odd() ? -d : d;
    }
    return r;
}

SuperPoly antibracket(const BVSpace& v, const SuperPoly& f, const SuperPoly& g) {
    return v.antibracket_structure().bracket(f, g);
}

SuperPoly antibracket_via_defect(const BVSpace& v, const SuperPoly& f, const SuperPoly& g) {
    auto defect = [&](const SuperPoly& fh) {
        bool odd = fh.parity() == Parity::odd;
        SuperPoly d = bv_laplacian(v, mul(fh, g)) - mul(bv_laplacian(v, fh), g);
        SuperPoly fdg = mul(fh, bv_laplacian(v, g));
        d -= odd ? -fdg : fdg;
        return odd ? -d : d;
    };
    auto [even, oddp] = f.parity_parts();
    SuperPoly r(v.context());
    if (!even.is_zero()) r += defect(even);
    if (!oddp.is_zero()) r += defect(oddp);
    return r;
}

namespace {

VectorField hamiltonian_common(const Context& ctx, int bracket_degree,
                               const std::function<SuperPoly(const SuperPoly&)>& brk_s_with,
                               const SuperPoly& s) {
    require(s.is_homogeneous_parity(), "hamiltonian_vf: action must be parity homogeneous");
    require(s.is_homogeneous_gh(), "hamiltonian_vf: action must be gh homogeneous");
    int sign = (s.parity() == Parity::odd) ? -1 : 1;
    VectorField q(ctx, s.is_zero() ? bracket_degree : s.ghost_number() + bracket_degree);
    for (std::size_t i = 0; i < ctx.size(); ++i) {
        SuperPoly c = brk_s_with(SuperPoly::generator(ctx, ctx.gen(i).name));
        if (sign < 0) c = -c;
        q.set_component(i, c);
    }
    return q;
}

} // namespace

VectorField hamiltonian_vf(const BVSpace& v, const SuperPoly& s) {
    return hamiltonian_common(
        v.context(), 1, [&](const SuperPoly& z) { return antibracket(v, s, z); }, s);
}

VectorField hamiltonian_vf(const GradedPoisson& p, const SuperPoly& s) {
    return hamiltonian_common(
        p.context(), p.degree(), [&](const SuperPoly& z) { return p.bracket(s, z); }, s);
}

MasterReport check_cme(const BVSpace& v, const SuperPoly& s) {
    require(s.is_zero() || (s.parity() == Parity::even && s.ghost_number() == 0),
            "check_cme: action must be even of ghost number 0");
    MasterReport rep;
    rep.residual = antibracket(v, s, s);
    rep.pass = rep.residual.is_zero();
    return rep;
}

MasterReport check_qme(const BVSpace& v, const SuperPoly& s) {
    require(s.is_zero() || (s.parity() == Parity::even && s.ghost_number() == 0),
            "check_qme: action must be even of ghost number 0");
    MasterReport rep;
    SuperPoly half_ss = antibracket(v, s, s).scaled(Scalar(rat(1, 2)));
    SuperPoly ihds = bv_laplacian(v, s).scaled(Scalar::i() * Scalar::hbar());
    rep.residual = half_ss - ihds;
    rep.pass = rep.residual.is_zero();
    if (!rep.pass) {
        auto parts = rep.residual.hbar_parts();
        rep.first_failing_order = parts.begin()->first;
    }
    return rep;
}

RelaxedForms relaxed_check_forms(const Form& omega, const VectorField& q, const SuperPoly& s,
                                 const std::optional<SuperPoly>& s_boundary) {
    auto chk = is_cohomological(q);
    if (!chk.ok)
        fail("relaxed_check_forms: [Q,Q] != 0, witness component d/d" + chk.witness->first +
             " = " + chk.witness->second.to_string());
    const Context dctx = omega.context();
    RelaxedForms out{Form(dctx), Form(dctx), false, false, std::nullopt, std::nullopt};
    Form ds = de_rham_d(lift_to_doubled(s, dctx));
    out.check_alpha = contract(q, omega) - ds;
    out.check_omega = de_rham_d(out.check_alpha);
    out.check_omega_matches = (out.check_omega + lie_derivative(q, omega)).is_zero();
    out.lq_check_omega_zero = lie_derivative(q, out.check_omega).is_zero();
    if (s_boundary) {
        Form iiq = contract(q, contract(q, omega));
        out.mcme_ok =
            (iiq - lift_to_doubled(*s_boundary, dctx).scaled(Scalar(2))).is_zero();
        VectorField e = euler_field(q.context());
        Form rec = contract(e, contract(q, out.check_omega));
        out.euler_recovers = (rec - lift_to_doubled(*s_boundary, dctx)).is_zero();
    }
    return out;
}

} // namespace bvk
