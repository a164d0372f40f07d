#include "bvk/poly.hpp"

#include <sstream>

namespace bvk {

Monomial Monomial::of(const Context& ctx,
                      std::initializer_list<std::pair<const char*, int>> ps) {
    Monomial m = unit(ctx.size());
    for (auto& [name, e] : ps) {
        require(e >= 0, "negative exponent");
        m.exps[ctx.index_of(name)] += std::uint16_t(e);
    }
    return m;
}

int Monomial::total_degree() const {
    int d = 0;
    for (auto e : exps) d += e;
    return d;
}

bool Monomial::is_unit() const {
    for (auto e : exps)
        if (e) return false;
    return true;
}

SuperPoly SuperPoly::constant(const Context& ctx, const Scalar& c) {
    SuperPoly p(ctx);
    p.add_term(Monomial::unit(ctx.size()), c);
    return p;
}

SuperPoly SuperPoly::generator(const Context& ctx, const std::string& name) {
    SuperPoly p(ctx);
    Monomial m = Monomial::unit(ctx.size());
    m.exps[ctx.index_of(name)] = 1;
    p.add_term(m, Scalar::one());
    return p;
}

SuperPoly SuperPoly::monomial(const Context& ctx, const Monomial& m, const Scalar& c) {
    require(m.exps.size() == ctx.size(), "monomial size mismatch");
    SuperPoly p(ctx);
    for (std::size_t i = 0; i < ctx.size(); ++i)
        if (ctx.gen(i).odd() && m.exps[i] >= 2) return p; // odd square vanishes
    p.add_term(m, c);
    return p;
}

void SuperPoly::add_term(const Monomial& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Parity SuperPoly::parity_of_term(const Monomial& m) const {
    int p = 0;
    for (std::size_t i = 0; i < ctx_.size(); ++i)
        if (ctx_.gen(i).odd()) p += m.exps[i];
    return Parity(p % 2);
}

int SuperPoly::gh_of_term(const Monomial& m) const {
    int g = 0;
    for (std::size_t i = 0; i < ctx_.size(); ++i) g += int(m.exps[i]) * ctx_.gen(i).gh;
    return g;
}

bool SuperPoly::is_homogeneous_parity() const {
    if (terms_.empty()) return true;
    Parity p = parity_of_term(terms_.begin()->first);
    for (auto& [m, c] : terms_)
        if (parity_of_term(m) != p) return false;
    return true;
}

bool SuperPoly::is_homogeneous_gh() const {
    if (terms_.empty()) return true;
    int g = gh_of_term(terms_.begin()->first);
    for (auto& [m, c] : terms_)
        if (gh_of_term(m) != g) return false;
    return true;
}

Parity SuperPoly::parity() const {
    require(is_homogeneous_parity(), "parity of a mixed-parity element: " + to_string());
    return terms_.empty() ? Parity::even : parity_of_term(terms_.begin()->first);
}

int SuperPoly::ghost_number() const {
    require(is_homogeneous_gh(), "ghost number of a mixed element: " + to_string());
    return terms_.empty() ? 0 : gh_of_term(terms_.begin()->first);
}

std::pair<SuperPoly, SuperPoly> SuperPoly::parity_parts() const {
    SuperPoly even(ctx_), odd(ctx_);
    for (auto& [m, c] : terms_)
        (parity_of_term(m) == Parity::even ? even : odd).add_term(m, c);
    return {even, odd};
}

std::map<int, SuperPoly> SuperPoly::gh_parts() const {
    std::map<int, SuperPoly> parts;
    for (auto& [m, c] : terms_) {
        int g = gh_of_term(m);
        auto it = parts.find(g);
        if (it == parts.end()) it = parts.emplace(g, SuperPoly(ctx_)).first;
        it->second.add_term(m, c);
    }
    return parts;
}

std::map<int, SuperPoly> SuperPoly::hbar_parts() const {
    std::map<int, SuperPoly> parts;
    for (auto& [m, c] : terms_) {
        for (auto& [pow, g] : c.terms()) {
            auto it = parts.find(pow);
            if (it == parts.end()) it = parts.emplace(pow, SuperPoly(ctx_)).first;
            it->second.add_term(m, Scalar::term(0, g));
        }
    }
    return parts;
}

SuperPoly SuperPoly::operator-() const {
    SuperPoly r(ctx_);
    for (auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

SuperPoly SuperPoly::operator+(const SuperPoly& o) const {
    require_same_context(ctx_, o.ctx_, "add");
    SuperPoly r = *this;
    for (auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

SuperPoly SuperPoly::operator-(const SuperPoly& o) const {
    require_same_context(ctx_, o.ctx_, "sub");
    SuperPoly r = *this;
    for (auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

namespace {

// Normal-ordered product of monomials. Returns false when an odd square
// appears; otherwise fills `out` and the Koszul sign.
bool mul_monomials(const Context& ctx, const Monomial& a, const Monomial& b, Monomial& out,
                   int& sign) {
    const std::size_t n = ctx.size();
    out.exps.assign(n, 0);
    // Moving each odd factor of b leftward past the odd factors of a with
    // larger context index contributes one transposition each.
    long swaps = 0;
    long odd_tail = 0; // odd factors of a at indices > j, accumulated from the right
    for (std::size_t rj = 0; rj < n; ++rj) {
        std::size_t j = n - 1 - rj;
        bool odd = ctx.gen(j).odd();
        if (odd && b.exps[j]) {
            if (a.exps[j]) return false; // odd square
            swaps += odd_tail;
        }
        unsigned e = unsigned(a.exps[j]) + unsigned(b.exps[j]);
        if (odd && e > 1) return false;
        require(e <= 0xffff, "exponent overflow");
        out.exps[j] = std::uint16_t(e);
        if (odd && a.exps[j]) ++odd_tail;
    }
    sign = (swaps % 2) ? -1 : 1;
    return true;
}

} // namespace

SuperPoly SuperPoly::operator*(const SuperPoly& o) const {
    return mul(*this, o);
}

SuperPoly mul(const SuperPoly& f, const SuperPoly& g) {
    require_same_context(f.context(), g.context(), "mul");
    SuperPoly r(f.context());
    Monomial m;
    int sign;
    for (auto& [ma, ca] : f.terms())
        for (auto& [mb, cb] : g.terms()) {
            if (!mul_monomials(f.context(), ma, mb, m, sign)) continue;
            Scalar c = ca * cb;
            r.add_term(m, sign < 0 ? -c : c);
        }
    return r;
}

bool SuperPoly::operator==(const SuperPoly& o) const {
    return ctx_ == o.ctx_ && terms_ == o.terms_;
}

SuperPoly SuperPoly::scaled(const Scalar& c) const {
    SuperPoly r(ctx_);
    for (auto& [m, k] : terms_) r.add_term(m, k * c);
    return r;
}

Scalar SuperPoly::constant_term() const {
    auto it = terms_.find(Monomial::unit(ctx_.size()));
    return it == terms_.end() ? Scalar::zero() : it->second;
}

SuperPoly SuperPoly::body() const {
    SuperPoly r(ctx_);
    for (auto& [m, c] : terms_) {
        bool has_odd = false;
        for (std::size_t i = 0; i < ctx_.size() && !has_odd; ++i)
            if (ctx_.gen(i).odd() && m.exps[i]) has_odd = true;
        if (!has_odd) r.add_term(m, c);
    }
    return r;
}

SuperPoly SuperPoly::soul() const { return *this - body(); }

bool SuperPoly::depends_on(std::size_t gen_index) const {
    for (auto& [m, c] : terms_)
        if (m.exps[gen_index]) return true;
    return false;
}

bool SuperPoly::depends_on(const std::string& name) const {
    return depends_on(ctx_.index_of(name));
}

int SuperPoly::degree_in(std::size_t gen_index) const {
    int d = 0;
    for (auto& [m, c] : terms_) d = std::max(d, int(m.exps[gen_index]));
    return d;
}

int SuperPoly::total_degree() const {
    int d = 0;
    for (auto& [m, c] : terms_) d = std::max(d, m.total_degree());
    return d;
}

std::string SuperPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c.to_string();
        for (std::size_t i = 0; i < ctx_.size(); ++i) {
            if (!m.exps[i]) continue;
            os << "*" << ctx_.gen(i).name;
            if (m.exps[i] > 1) os << "^" << m.exps[i];
        }
    }
    return os.str();
}

SuperPoly left_derive(const SuperPoly& f, std::size_t v) {
    require(v < f.context().size(), "generator index out of range");
    const Context& ctx = f.context();
    const bool v_odd = ctx.gen(v).odd();
    SuperPoly r(ctx);
    for (auto& [m, c] : f.terms()) {
        if (!m.exps[v]) continue;
        Monomial d = m;
        Scalar coef = c;
        if (v_odd) {
            // Sign from moving the odd generator to the front past the odd
            // factors with smaller context index.
            long before = 0;
            for (std::size_t i = 0; i < v; ++i)
                if (ctx.gen(i).odd() && m.exps[i]) ++before;
            if (before % 2) coef = -coef;
            d.exps[v] = 0;
        } else {
            coef = coef * Scalar(long(m.exps[v]));
            d.exps[v] -= 1;
        }
        r.add_term(d, coef);
    }
    return r;
}

SuperPoly left_derive(const SuperPoly& f, const std::string& name) {
    return left_derive(f, f.context().index_of(name));
}

SuperPoly right_derive(const SuperPoly& f, std::size_t v) {
    require(v < f.context().size(), "generator index out of range");
    if (!f.context().gen(v).odd()) return left_derive(f, v);
    // (-1)^{|v|(|f|+1)} per homogeneous component; |v| odd here.
    auto [even, odd] = f.parity_parts();
    return -left_derive(even, v) + left_derive(odd, v);
}

SuperPoly right_derive(const SuperPoly& f, const std::string& name) {
    return right_derive(f, f.context().index_of(name));
}

SuperPoly substitute(const SuperPoly& f, const std::map<std::string, SuperPoly>& bindings) {
    const Context& ctx = f.context();
    std::vector<const SuperPoly*> image(ctx.size(), nullptr);
    for (auto& [name, value] : bindings) {
        std::size_t i = ctx.index_of(name);
        require_same_context(ctx, value.context(), "substitute");
        const Generator& g = ctx.gen(i);
        if (!value.is_zero()) {
            require(value.is_homogeneous_parity() && value.parity() == g.parity(),
                    "substitute: parity mismatch for generator '" + name + "'");
            require(value.is_homogeneous_gh() && value.ghost_number() == g.gh,
                    "substitute: ghost-number mismatch for generator '" + name + "'");
        }
        image[i] = &value;
    }
    SuperPoly r(ctx);
    for (auto& [m, c] : f.terms()) {
        SuperPoly term = SuperPoly::constant(ctx, c);
        for (std::size_t i = 0; i < ctx.size(); ++i) {
            for (unsigned e = 0; e < m.exps[i]; ++e) {
                if (image[i]) {
                    term = mul(term, *image[i]);
                } else {
                    Monomial g = Monomial::unit(ctx.size());
                    g.exps[i] = 1;
                    term = mul(term, SuperPoly::monomial(ctx, g, Scalar::one()));
                }
                if (term.is_zero()) break;
            }
            if (term.is_zero()) break;
        }
        r += term;
    }
    return r;
}

SuperPoly transport(const SuperPoly& f, const Context& target) {
    const Context& src = f.context();
    std::vector<std::size_t> map(src.size());
    for (std::size_t i = 0; i < src.size(); ++i) {
        std::size_t j = target.index_of(src.gen(i).name);
        require(target.gen(j).gh == src.gen(i).gh,
                "transport: grading mismatch for '" + src.gen(i).name + "'");
        map[i] = j;
    }
    SuperPoly r(target);
    for (auto& [m, c] : f.terms()) {
        // Context order may differ; renormalize through a product of
        // generators so Koszul signs are re-derived, not assumed.
        SuperPoly term = SuperPoly::constant(target, c);
        for (std::size_t i = 0; i < src.size(); ++i) {
            for (unsigned e = 0; e < m.exps[i]; ++e) {
                Monomial g = Monomial::unit(target.size());
                g.exps[map[i]] = 1;
                term = mul(term, SuperPoly::monomial(target, g, Scalar::one()));
            }
        }
        r += term;
    }
    return r;
}

} // namespace bvk
