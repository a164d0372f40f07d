#include "bvk/scalar.hpp"

#include <sstream>

namespace bvk {

std::string rat_string(const Rat& r) {
    std::ostringstream os;
    os << r.get_num();
    if (r.get_den() != 1) os << "/" << r.get_den();
    return os.str();
}

Rat rat_parse(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0) fail("cannot parse rational: '" + s + "'");
    require(r.get_den() != 0, "rational with zero denominator: '" + s + "'");
    r.canonicalize();
    return r;
}

namespace {
std::atomic<int> g_lo{-4};
std::atomic<int> g_hi{4};
std::atomic<std::uint64_t> g_dropped{0};
} // namespace

int HbarWindow::lo() { return g_lo.load(); }
int HbarWindow::hi() { return g_hi.load(); }
void HbarWindow::set(int lo, int hi) {
    require(lo <= 0 && hi >= 0 && lo <= hi, "hbar window must contain 0");
    g_lo.store(lo);
    g_hi.store(hi);
}
std::uint64_t HbarWindow::dropped_count() { return g_dropped.load(); }
void HbarWindow::reset_dropped() { g_dropped.store(0); }
void HbarWindow::note_drop() { ++g_dropped; }

void Scalar::add_term(int pow, const GaussRat& c) {
    if (c.is_zero()) return;
    if (pow < HbarWindow::lo() || pow > HbarWindow::hi()) {
        HbarWindow::note_drop();
        return;
    }
    auto it = terms_.find(pow);
    if (it == terms_.end()) {
        terms_.emplace(pow, c);
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Scalar Scalar::operator-() const {
    Scalar r;
    for (auto& [p, c] : terms_) r.terms_.emplace(p, -c);
    return r;
}

Scalar Scalar::operator+(const Scalar& o) const {
    Scalar r = *this;
    for (auto& [p, c] : o.terms_) r.add_term(p, c);
    return r;
}

Scalar Scalar::operator-(const Scalar& o) const {
    Scalar r = *this;
    for (auto& [p, c] : o.terms_) r.add_term(p, -c);
    return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
    Scalar r;
    for (auto& [p1, c1] : terms_)
        for (auto& [p2, c2] : o.terms_) r.add_term(p1 + p2, c1 * c2);
    return r;
}

Scalar Scalar::inverse() const {
    require(is_monomial(), "scalar inverse requires a single hbar power, got " + to_string());
    auto& [p, c] = *terms_.begin();
    return Scalar::term(-p, c.inverse());
}

Scalar Scalar::shifted(int k) const {
    Scalar r;
    for (auto& [p, c] : terms_) r.add_term(p + k, c);
    return r;
}

GaussRat Scalar::coeff(int k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? GaussRat() : it->second;
}

std::string Scalar::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [p, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << rat_string(c.re);
        if (c.im != 0) os << (c.im > 0 ? "+" : "-") << rat_string(abs(c.im)) << "i";
        os << ")";
        if (p != 0) os << "*h^" << p;
    }
    return os.str();
}

} // namespace bvk
