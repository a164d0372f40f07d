#include <doctest.h>

#include "bvk/gauge_fix.hpp"
#include "rng.hpp"

using namespace bvk;

namespace {

// two antighost-style odd q's (gh -1) with even momenta (gh 0), plus formal
// even gh-0 parameters a1, a2 for symbolic fermion coefficients
BVSpace odd_with_params() {
    return BVSpace::make({{{"cb1", -1}, {"pi1", 0}}, {{"cb2", -1}, {"pi2", 0}}}, "oddp",
                         {{"a1", 0}, {"a2", 0}});
}

// adds one even q (x) with odd momentum px
BVSpace mixed_space() {
    return BVSpace::make(
        {{{"x", 0}, {"px", -1}}, {{"cb1", -1}, {"pi1", 0}}, {{"cb2", -1}, {"pi2", 0}}},
        "mixedg", {{"a1", 0}, {"a2", 0}});
}

GaussianWeight unit_weight(const Context& c, std::initializer_list<std::string> vars) {
    std::vector<std::string> v(vars);
    QMat cov(v.size(), v.size());
    for (std::size_t i = 0; i < v.size(); ++i) cov.at(i, i) = 1;
    return GaussianWeight(c, v, cov);
}

// random gauge fermion, linear in the external parameters; on spaces with an
// even q it may also depend polynomially on x
SuperPoly random_fermion_poly(Rng& rng, const BVSpace& v) {
    const Context& c = v.context();
    auto a1 = SuperPoly::generator(c, "a1");
    auto a2 = SuperPoly::generator(c, "a2");
    auto cb1 = SuperPoly::generator(c, "cb1");
    auto cb2 = SuperPoly::generator(c, "cb2");
    SuperPoly psi(c);
    if (rng.chance(2, 3)) psi += mul(a1, cb1).scaled(Scalar(rng.int_in(-2, 2)));
    if (rng.chance(2, 3)) psi += mul(a2, cb2).scaled(Scalar(rng.int_in(-2, 2)));
    if (rng.chance(1, 2)) psi += mul(a1, cb2).scaled(Scalar(rng.int_in(-2, 2)));
    if (c.has("x")) {
        auto x = SuperPoly::generator(c, "x");
        if (rng.chance(1, 2)) psi += mul(x, mul(a1, cb1)).scaled(Scalar(rng.int_in(-2, 2)));
        if (rng.chance(1, 2)) psi += mul(mul(x, x), mul(a2, cb2)).scaled(Scalar(rng.int_in(-1, 1)));
    }
    return psi;
}

} // namespace

TEST_CASE("gauge fermion contract") {
    BVSpace v = odd_with_params();
    const Context& c = v.context();
    auto psi_poly = mul(SuperPoly::generator(c, "a2"), SuperPoly::generator(c, "cb1"));
    GaugeFermion psi(v, psi_poly);
    CHECK_THROWS_AS(GaugeFermion(v, SuperPoly::generator(c, "pi1")), error); // momentum
    CHECK_THROWS_AS(GaugeFermion(v, SuperPoly::generator(c, "a1")), error);  // even, gh 0

    // restrict: p_i -> dPsi/dq_i = a2 for pair 1, 0 for pair 2
    auto r = restrict_to_lagrangian(SuperPoly::generator(c, "pi1"), psi, v);
    CHECK(r == SuperPoly::generator(c, "a2"));
    CHECK(restrict_to_lagrangian(SuperPoly::generator(c, "pi1"), GaugeFermion::zero(v), v)
              .is_zero());
    auto g = mul(SuperPoly::generator(c, "cb1"), SuperPoly::generator(c, "cb2"));
    CHECK(restrict_to_lagrangian(g, psi, v) == g);
}

TEST_CASE("bv integral basics") {
    BVSpace v = odd_with_params();
    const Context& c = v.context();
    auto cb1 = SuperPoly::generator(c, "cb1");
    auto cb2 = SuperPoly::generator(c, "cb2");
    auto pi1 = SuperPoly::generator(c, "pi1");
    auto pi2 = SuperPoly::generator(c, "pi2");
    auto a1 = SuperPoly::generator(c, "a1");
    auto a2 = SuperPoly::generator(c, "a2");
    GaussianWeight w;

    // f = cb1 cb2 + pi1 pi2 with Psi = a1 cb1 + a2 cb2: the restriction
    // sends pi1 pi2 to a1 a2 which has no top part; the integral is 1 for
    // every parameter value (expansion oracle).
    auto f = mul(cb1, cb2) + mul(pi1, pi2);
    GaugeFermion psi(v, mul(a1, cb1) + mul(a2, cb2));
    auto restricted = restrict_to_lagrangian(f, psi, v);
    CHECK(restricted == mul(cb1, cb2) + mul(a1, a2));
    auto val = bv_integrate(f, psi, v, w);
    CHECK(val == berezin_integrate(restricted, {"cb1", "cb2"}));
    CHECK(val == SuperPoly::constant(c, Scalar::one()));

    // f = 1 integrates to zero when odd q's exist
    CHECK(bv_integrate(SuperPoly::constant(c, Scalar::one()), psi, v, w).is_zero());
}

TEST_CASE("theorem part 1: integrals of Delta-exact vanish (pure odd)") {
    Rng rng(61);
    BVSpace v = odd_with_params();
    GaussianWeight w;
    for (int k = 0; k < 30; ++k) {
        auto g = random_poly(rng, v.context(), 4, 6);
        std::vector<GaugeFermion> psis;
        for (int j = 0; j < 3; ++j) psis.emplace_back(v, random_fermion_poly(rng, v));
        auto rep = check_thm_bv1(g, psis, v, w);
        CHECK(rep.pass);
    }
    auto rep = check_thm_bv1(SuperPoly(v.context()), {GaugeFermion::zero(v)}, v, w);
    CHECK(rep.pass);
}

TEST_CASE("theorem part 1 with gaussian even block (Stein path)") {
    Rng rng(62);
    BVSpace v = mixed_space();
    const Context& c = v.context();
    GaussianWeight w = unit_weight(c, {"x"});
    // g = x px cb1 cb2: the weighted Laplacian is (1 - x^2) cb1 cb2 != 0,
    // and its gauge-fixed integral vanishes by E[x^2] = 1.
    auto g0 = mul(mul(SuperPoly::generator(c, "x"), SuperPoly::generator(c, "px")),
                  mul(SuperPoly::generator(c, "cb1"), SuperPoly::generator(c, "cb2")));
    auto dg0 = weighted_laplacian(v, w, g0);
    REQUIRE(!dg0.is_zero());
    GaugeFermion psi0(v,
                      mul(SuperPoly::generator(c, "a1"), SuperPoly::generator(c, "cb1")) +
                          mul(SuperPoly::generator(c, "a2"), SuperPoly::generator(c, "cb2")));
    CHECK(bv_integrate(dg0, psi0, v, w).is_zero());

    for (int k = 0; k < 25; ++k) {
        auto g = random_poly(rng, c, 4, 6);
        std::vector<GaugeFermion> psis;
        for (int j = 0; j < 3; ++j) psis.emplace_back(v, random_fermion_poly(rng, v));
        auto rep = check_thm_bv1(g, psis, v, w);
        CHECK(rep.pass);
    }
}

TEST_CASE("theorem part 2: gauge independence, symbolic coefficients") {
    BVSpace v = odd_with_params();
    const Context& c = v.context();
    auto cb1 = SuperPoly::generator(c, "cb1");
    auto cb2 = SuperPoly::generator(c, "cb2");
    auto pi1 = SuperPoly::generator(c, "pi1");
    auto pi2 = SuperPoly::generator(c, "pi2");
    auto a1 = SuperPoly::generator(c, "a1");
    auto a2 = SuperPoly::generator(c, "a2");
    GaussianWeight w;

    std::vector<GaugeFermion> family;
    family.emplace_back(v, mul(a1, cb1) + mul(a2, cb2)); // symbolic member
    family.emplace_back(v, SuperPoly(c));
    family.emplace_back(v, mul(a1, cb2));

    // f = cb1 cb2 + pi1 pi2 is Delta-closed; integral = 1, no a-dependence
    auto f = mul(cb1, cb2) + mul(pi1, pi2);
    REQUIRE(bv_laplacian(v, f).is_zero());
    auto rep = check_thm_bv2(f, family, v, w, {"a1", "a2"});
    CHECK(rep.pass);
    CHECK(rep.values[0] == SuperPoly::constant(c, Scalar::one()));

    // f = cb1 pi2 is Delta-closed and integrates to 0 for every fermion
    auto f2 = mul(cb1, pi2);
    REQUIRE(bv_laplacian(v, f2).is_zero());
    auto rep2 = check_thm_bv2(f2, family, v, w, {"a1", "a2"});
    CHECK(rep2.pass);
    for (auto& val : rep2.values) CHECK(val.is_zero());

    // hypothesis failure: Delta(pi1 pi2 cb1 cb2) != 0 and the symbolic
    // integral is a1 a2, exhibiting explicit fermion dependence
    auto f3 = mul(mul(pi1, pi2), mul(cb1, cb2));
    REQUIRE(!bv_laplacian(v, f3).is_zero());
    auto rep3 = check_thm_bv2(f3, family, v, w, {"a1", "a2"});
    CHECK(!rep3.pass);
    CHECK(!rep3.hypothesis_ok);
    CHECK(!rep3.dependence.empty());
    CHECK(rep3.values[0] == mul(a1, a2));
}

TEST_CASE("property: gauge independence of Delta-closed integrands") {
    Rng rng(64);
    BVSpace v = odd_with_params();
    GaussianWeight w;
    int tested = 0;
    for (int k = 0; k < 200 && tested < 25; ++k) {
        auto g = random_poly(rng, v.context(), 3, 5);
        auto f = bv_laplacian(v, g); // Delta-exact, hence Delta-closed
        if (f.is_zero()) continue;
        std::vector<GaugeFermion> family;
        family.emplace_back(v, random_fermion_poly(rng, v));
        family.emplace_back(v, random_fermion_poly(rng, v));
        family.emplace_back(v, SuperPoly(v.context()));
        auto rep = check_thm_bv2(f, family, v, w, {"a1", "a2"});
        CHECK(rep.pass);
        ++tested;
    }
    CHECK(tested > 0);
}

TEST_CASE("pushforward: factorized example and chain map") {
    Rng rng(65);
    // retain (z, pz) and (cb0, pi0); integrate (cb1, pi1), (cb2, pi2)
    BVSpace v = BVSpace::make({{{"z", 0}, {"pz", -1}},
                               {{"cb0", -1}, {"pi0", 0}},
                               {{"cb1", -1}, {"pi1", 0}},
                               {{"cb2", -1}, {"pi2", 0}}},
                              "push");
    const Context& c = v.context();
    FiberSplit split = FiberSplit::of(v, {2, 3});
    GaussianWeight w;

    auto f = mul(mul(SuperPoly::generator(c, "z"), SuperPoly::generator(c, "pz")),
                 mul(SuperPoly::generator(c, "cb1"), SuperPoly::generator(c, "cb2")));
    auto pushed = bv_pushforward(f, GaugeFermion::zero(v), v, split, w);
    CHECK(pushed == mul(SuperPoly::generator(c, "z"), SuperPoly::generator(c, "pz")));

    for (int k = 0; k < 40; ++k) {
        auto g = random_poly(rng, c, 4, 6);
        auto lhs = block_laplacian(v, split.retained, w,
                                   bv_pushforward(g, GaugeFermion::zero(v), v, split, w));
        auto rhs =
            bv_pushforward(weighted_laplacian(v, w, g), GaugeFermion::zero(v), v, split, w);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("pushforward rejects fermions touching retained variables") {
    BVSpace v = BVSpace::make({{{"cb0", -1}, {"pi0", 0}}, {{"cb1", -1}, {"pi1", 0}}}, "rej",
                              {{"a", 0}});
    FiberSplit split = FiberSplit::of(v, {1});
    GaussianWeight w;
    auto psi = mul(SuperPoly::generator(v.context(), "a"),
                   SuperPoly::generator(v.context(), "cb0"));
    CHECK_THROWS_AS(bv_pushforward(SuperPoly::constant(v.context(), Scalar::one()),
                                   GaugeFermion(v, psi), v, split, w),
                    error);
}

TEST_CASE("family variation shifts the pushforward by a Delta'-exact term") {
    Rng rng(66);
    BVSpace v = BVSpace::make({{{"cb0", -1}, {"pi0", 0}},
                               {{"cb1", -1}, {"pi1", 0}},
                               {{"cb2", -1}, {"pi2", 0}}},
                              "fam", {{"a", 0}});
    const Context& c = v.context();
    FiberSplit split = FiberSplit::of(v, {1, 2});
    GaussianWeight w;
    auto a = SuperPoly::generator(c, "a");
    auto cb1 = SuperPoly::generator(c, "cb1");
    auto cb2 = SuperPoly::generator(c, "cb2");
    // seed with the full-saturation monomial so the variation is visible,
    // then add random degree-6 content
    auto top = mul(mul(SuperPoly::generator(c, "pi1"), SuperPoly::generator(c, "pi2")),
                   mul(mul(cb1, cb2), mul(SuperPoly::generator(c, "cb0"),
                                          SuperPoly::generator(c, "pi0"))));
    int tested = 0;
    for (int k = 0; k < 60 && tested < 10; ++k) {
        auto f = bv_laplacian(v, top + random_poly(rng, c, 6, 6)); // Delta-closed
        if (f.is_zero()) continue;
        auto p0 = bv_pushforward(f, GaugeFermion::zero(v), v, split, w);
        auto p1 = bv_pushforward(f, GaugeFermion(v, mul(a, cb1) + mul(a, cb2)), v, split, w);
        auto diff = p1 - p0;
        if (diff.is_zero()) continue;
        auto prim = solve_laplacian_primitive(v, split.retained, w, diff);
        REQUIRE(prim.has_value());
        CHECK(block_laplacian(v, split.retained, w, *prim) == diff);
        ++tested;
    }
    CHECK(tested > 0);
}
