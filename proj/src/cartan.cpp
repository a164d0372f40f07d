#include "bvk/cartan.hpp"

#include <sstream>

namespace bvk {

void VectorField::set_component(const std::string& name, const SuperPoly& p) {
    set_component(ctx_.index_of(name), p);
}

void VectorField::set_component(std::size_t i, const SuperPoly& p) {
    require(i < ctx_.size(), "component index out of range");
    require_same_context(ctx_, p.context(), "vector field component");
    if (!p.is_zero()) {
        require(p.is_homogeneous_gh() && p.ghost_number() == ctx_.gen(i).gh + degree_,
                "component of d/d" + ctx_.gen(i).name + " must have ghost number " +
                    std::to_string(ctx_.gen(i).gh + degree_));
    }
    comps_[i] = p;
}

bool VectorField::is_zero() const {
    for (auto& c : comps_)
        if (!c.is_zero()) return false;
    return true;
}

SuperPoly VectorField::apply(const SuperPoly& f) const {
    require_same_context(ctx_, f.context(), "vector field application");
    SuperPoly r(ctx_);
    for (std::size_t i = 0; i < ctx_.size(); ++i) {
        if (comps_[i].is_zero()) continue;
        r += mul(comps_[i], left_derive(f, i));
    }
    return r;
}

VectorField VectorField::operator+(const VectorField& o) const {
    require_same_context(ctx_, o.ctx_, "vector field sum");
    require(degree_ == o.degree_, "vector field sum: degree mismatch");
    VectorField r(ctx_, degree_);
    for (std::size_t i = 0; i < ctx_.size(); ++i) r.comps_[i] = comps_[i] + o.comps_[i];
    return r;
}

VectorField VectorField::operator-() const {
    VectorField r(ctx_, degree_);
    for (std::size_t i = 0; i < ctx_.size(); ++i) r.comps_[i] = -comps_[i];
    return r;
}

VectorField VectorField::scaled(const Scalar& c) const {
    VectorField r(ctx_, degree_);
    for (std::size_t i = 0; i < ctx_.size(); ++i) r.comps_[i] = comps_[i].scaled(c);
    return r;
}

bool VectorField::operator==(const VectorField& o) const {
    if (ctx_ != o.ctx_ || degree_ != o.degree_) return false;
    for (std::size_t i = 0; i < ctx_.size(); ++i)
        if (!(comps_[i] == o.comps_[i])) return false;
    return true;
}

std::string VectorField::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < ctx_.size(); ++i) {
        if (comps_[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << comps_[i].to_string() << ")*d/d" << ctx_.gen(i).name;
    }
    return first ? "0" : os.str();
}

namespace {

// A doubled context has layout [z_1..z_n, dz_1..dz_n].
std::size_t doubled_base_size(const Context& ctx) {
    require(ctx.size() % 2 == 0, "not a doubled context: odd size");
    std::size_t n = ctx.size() / 2;
    for (std::size_t i = 0; i < n; ++i) {
        require(ctx.gen(n + i).name == "d" + ctx.gen(i).name &&
                    ctx.gen(n + i).gh == ctx.gen(i).gh + 1,
                "not a doubled context at position " + std::to_string(i));
    }
    return n;
}

} // namespace

SuperPoly lift_to_doubled(const SuperPoly& f, const Context& doubled_ctx) {
    return transport(f, doubled_ctx);
}

Form d_generator(const Context& doubled_ctx, const std::string& base_name) {
    return SuperPoly::generator(doubled_ctx, "d" + base_name);
}

Form de_rham_d(const Form& omega) {
    const Context& ctx = omega.context();
    std::size_t n = doubled_base_size(ctx);
    Form r(ctx);
    for (std::size_t i = 0; i < n; ++i) {
        SuperPoly df = left_derive(omega, i);
        if (df.is_zero()) continue;
        r += mul(SuperPoly::generator(ctx, ctx.gen(n + i).name), df);
    }
    return r;
}

Form contract(const VectorField& X, const Form& omega) {
    const Context& dctx = omega.context();
    std::size_t n = doubled_base_size(dctx);
    if (X.context().size() != n)
        fail("contract: context mismatch between field on " + X.context().describe() +
             " and form on " + dctx.describe());
    for (std::size_t i = 0; i < n; ++i)
        require(X.context().gen(i) == dctx.gen(i),
                "contract: context mismatch between field on " + X.context().describe() +
                    " and form on " + dctx.describe());
    VectorField iota(dctx, X.degree() - 1);
    for (std::size_t i = 0; i < n; ++i) {
        if (X.component(i).is_zero()) continue;
        iota.set_component(n + i, lift_to_doubled(X.component(i), dctx));
    }
    return iota.apply(omega);
}

Form lie_derivative(const VectorField& X, const Form& omega) {
    Form a = contract(X, de_rham_d(omega));
    Form b = de_rham_d(contract(X, omega));
    return (X.degree() % 2 == 0) ? a + b : a - b;
}

VectorField vf_bracket(const VectorField& X, const VectorField& Y) {
    require_same_context(X.context(), Y.context(), "vf_bracket");
    const Context& ctx = X.context();
    VectorField r(ctx, X.degree() + Y.degree());
    // [X,Y] = X o Y - (-1)^{|X||Y|} Y o X, componentwise on generators.
    const bool both_odd = (X.degree() % 2 != 0) && (Y.degree() % 2 != 0);
    for (std::size_t i = 0; i < ctx.size(); ++i) {
        SuperPoly yx = Y.apply(X.component(i));
        r.set_component(i, X.apply(Y.component(i)) + (both_odd ? yx : -yx));
    }
    return r;
}

CohomologicalCheck is_cohomological(const VectorField& Q) {
    require(Q.degree() == 1, "cohomological check requires degree +1 (got " +
                                 std::to_string(Q.degree()) + ")");
    VectorField qq = vf_bracket(Q, Q);
    CohomologicalCheck res;
    res.ok = qq.is_zero();
    if (!res.ok) {
        for (std::size_t i = 0; i < Q.context().size(); ++i)
            if (!qq.component(i).is_zero()) {
                res.witness = {Q.context().gen(i).name, qq.component(i)};
                break;
            }
    }
    return res;
}

VectorField euler_field(const Context& ctx) {
    VectorField e(ctx, 0);
    for (std::size_t i = 0; i < ctx.size(); ++i) {
        if (ctx.gen(i).gh == 0) continue;
        e.set_component(i, SuperPoly::generator(ctx, ctx.gen(i).name)
                                .scaled(Scalar(long(ctx.gen(i).gh))));
    }
    return e;
}

VectorField de_rham_field(const Context& base_ctx) {
    Context dctx = base_ctx.doubled();
    std::size_t n = base_ctx.size();
    VectorField q(dctx, 1);
    for (std::size_t i = 0; i < n; ++i)
        q.set_component(i, SuperPoly::generator(dctx, dctx.gen(n + i).name));
    return q;
}

} // namespace bvk
