#pragma once
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bvk/context.hpp"
#include "bvk/scalar.hpp"

namespace bvk {

// Exponent vector relative to a Context; odd generators carry 0/1.
// Normal form is context order with the Koszul sign absorbed into the
// coefficient by the polynomial operations.
struct Monomial {
    std::vector<std::uint16_t> exps;

    static Monomial unit(std::size_t n) { return Monomial{std::vector<std::uint16_t>(n, 0)}; }
    static Monomial of(const Context& ctx, std::initializer_list<std::pair<const char*, int>> ps);

    bool operator<(const Monomial& o) const { return exps < o.exps; }
    bool operator==(const Monomial& o) const { return exps == o.exps; }

    int total_degree() const;
    bool is_unit() const;
};

class SuperPoly {
  public:
    SuperPoly() = default;
    explicit SuperPoly(Context ctx) : ctx_(std::move(ctx)) {}

    static SuperPoly zero(const Context& ctx) { return SuperPoly(ctx); }
    static SuperPoly constant(const Context& ctx, const Scalar& c);
    static SuperPoly generator(const Context& ctx, const std::string& name);
    static SuperPoly monomial(const Context& ctx, const Monomial& m, const Scalar& c);

    const Context& context() const { return ctx_; }
    const std::map<Monomial, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    // Grading. parity()/ghost_number() require homogeneity and reject
    // mixed elements; the *_of_term helpers are always defined.
    Parity parity_of_term(const Monomial& m) const;
    int gh_of_term(const Monomial& m) const;
    bool is_homogeneous_parity() const;
    bool is_homogeneous_gh() const;
    Parity parity() const;
    int ghost_number() const;

    // Decompositions into homogeneous parts (even first, odd second).
    std::pair<SuperPoly, SuperPoly> parity_parts() const;
    std::map<int, SuperPoly> gh_parts() const;
    // Split term-wise on the hbar power carried by the coefficient.
    std::map<int, SuperPoly> hbar_parts() const;

    SuperPoly operator-() const;
    SuperPoly operator+(const SuperPoly& o) const;
    SuperPoly operator-(const SuperPoly& o) const;
    SuperPoly operator*(const SuperPoly& o) const;
    SuperPoly& operator+=(const SuperPoly& o) { return *this = *this + o; }
    SuperPoly& operator-=(const SuperPoly& o) { return *this = *this - o; }
    bool operator==(const SuperPoly& o) const;

    SuperPoly scaled(const Scalar& c) const;

    // Scalar part (coefficient of the unit monomial).
    Scalar constant_term() const;
    // Terms containing at least one odd generator vanish when all odd
    // generators are sent to zero.
    SuperPoly body() const;
    // this - body(): the nilpotent part of an even element.
    SuperPoly soul() const;

    bool depends_on(std::size_t gen_index) const;
    bool depends_on(const std::string& name) const;
    int degree_in(std::size_t gen_index) const;
    int total_degree() const;

    std::string to_string() const;

  private:
    friend SuperPoly left_derive(const SuperPoly&, std::size_t);
    friend SuperPoly mul(const SuperPoly&, const SuperPoly&);
    void add_term(const Monomial& m, const Scalar& c);
    Context ctx_;
    std::map<Monomial, Scalar> terms_;
};

// Graded derivations and houses of the module's operations.
SuperPoly mul(const SuperPoly& f, const SuperPoly& g);

// Left derivative with respect to generator index/name.
SuperPoly left_derive(const SuperPoly& f, std::size_t gen_index);
SuperPoly left_derive(const SuperPoly& f, const std::string& name);

// Right derivative: (-1)^{|v|(|f|+1)} * left_derive on each homogeneous part.
SuperPoly right_derive(const SuperPoly& f, std::size_t gen_index);
SuperPoly right_derive(const SuperPoly& f, const std::string& name);

// Algebra homomorphism determined by generator images. Each binding value
// must carry the generator's parity and ghost number; unbound generators
// map to themselves.
SuperPoly substitute(const SuperPoly& f, const std::map<std::string, SuperPoly>& bindings);

// Push f into a context that contains (at least) all generators f uses,
// matching by name and grading.
SuperPoly transport(const SuperPoly& f, const Context& target);

} // namespace bvk
