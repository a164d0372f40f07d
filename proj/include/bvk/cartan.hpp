#pragma once
#include <optional>

#include "bvk/poly.hpp"

namespace bvk {

// Graded vector field: a degree-k derivation Sum_z comp[z] * d/dz acting
// from the left. Each component must have gh(gen) + degree.
class VectorField {
  public:
    VectorField(Context ctx, int degree)
        : ctx_(std::move(ctx)), degree_(degree), comps_(ctx_.size(), SuperPoly(ctx_)) {}

    static VectorField zero(const Context& ctx, int degree) { return VectorField(ctx, degree); }

    const Context& context() const { return ctx_; }
    int degree() const { return degree_; }
    Parity parity() const { return parity_of_gh(degree_); }

    const SuperPoly& component(std::size_t i) const { return comps_[i]; }
    const SuperPoly& component(const std::string& name) const {
        return comps_[ctx_.index_of(name)];
    }
    void set_component(const std::string& name, const SuperPoly& p);
    void set_component(std::size_t i, const SuperPoly& p);

    bool is_zero() const;

    // Action on functions: Sum comp * left_derive.
    SuperPoly apply(const SuperPoly& f) const;

    VectorField operator+(const VectorField& o) const;
    VectorField operator-() const;
    VectorField scaled(const Scalar& c) const;
    bool operator==(const VectorField& o) const;

    std::string to_string() const;

  private:
    Context ctx_;
    int degree_;
    std::vector<SuperPoly> comps_;
};

// Forms are polynomials on the doubled context (z, dz) with gh(dz)=gh(z)+1.
using Form = SuperPoly;

// Lift a function on the base context to the doubled context.
SuperPoly lift_to_doubled(const SuperPoly& f, const Context& doubled_ctx);

// One-form dz as an element of the doubled context.
Form d_generator(const Context& doubled_ctx, const std::string& base_name);

// de Rham differential d = Sum dz * d/dz on the doubled context; satisfies
// d(d(w)) = 0.
Form de_rham_d(const Form& omega);

// Contraction: derivation sending dz -> X(z)-component, z -> 0; has ghost
// degree deg(X) - 1 on the doubled context.
Form contract(const VectorField& X, const Form& omega);

// Lie derivative as the graded commutator [iota_X, d].
Form lie_derivative(const VectorField& X, const Form& omega);

// Graded Lie bracket of vector fields on the same context.
VectorField vf_bracket(const VectorField& X, const VectorField& Y);

struct CohomologicalCheck {
    bool ok = false;
    std::optional<std::pair<std::string, SuperPoly>> witness; // nonzero [Q,Q] component
};

// Q odd of degree +1; true iff [Q,Q] = 0.
CohomologicalCheck is_cohomological(const VectorField& Q);

// Euler vector field: z -> gh(z) z, degree 0.
VectorField euler_field(const Context& ctx);

// de Rham field on the doubled context (the cohomological field whose action
// is de_rham_d), for tests and examples.
VectorField de_rham_field(const Context& base_ctx);

} // namespace bvk
