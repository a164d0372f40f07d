#pragma once
#include <atomic>
#include <cstdint>
#include <map>
#include <string>

#include <gmpxx.h>

#include "bvk/error.hpp"

namespace bvk {

using Rat = mpq_class;

inline Rat rat(long n, long d = 1) {
    require(d != 0, "rational with zero denominator");
    Rat r(n, d);
    r.canonicalize();
    return r;
}

std::string rat_string(const Rat& r); // canonical "num/den", den > 0, or "n" when den == 1
Rat rat_parse(const std::string& s);

// Element of Q(i): re + i*im.
struct GaussRat {
    Rat re, im;

    GaussRat() : re(0), im(0) {}
    GaussRat(Rat r) : re(std::move(r)), im(0) {}
    GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }

    GaussRat operator-() const { return {-re, -im}; }
    GaussRat operator+(const GaussRat& o) const { return {re + o.re, im + o.im}; }
    GaussRat operator-(const GaussRat& o) const { return {re - o.re, im - o.im}; }
    GaussRat operator*(const GaussRat& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    GaussRat inverse() const {
        Rat n = re * re + im * im;
        require(n != 0, "division by zero in Q(i)");
        return {re / n, -im / n};
    }
    bool operator==(const GaussRat& o) const { return re == o.re && im == o.im; }
};

// The hbar Laurent truncation window [lo, hi]. Powers outside are dropped
// and the drop is counted so reports can flag it.
struct HbarWindow {
    static int lo();
    static int hi();
    static void set(int lo, int hi);
    static std::uint64_t dropped_count();
    static void reset_dropped();
    static void note_drop();
};

// Exact scalar: element of Q(i)[hbar, hbar^-1] truncated to the window.
// Stored sparsely as power -> Q(i) coefficient, zero coefficients absent.
class Scalar {
  public:
    Scalar() = default;
    Scalar(long n) { add_term(0, GaussRat(rat(n))); }
    Scalar(const Rat& r) { add_term(0, GaussRat(r)); }
    Scalar(const GaussRat& g) { add_term(0, g); }

    static Scalar zero() { return Scalar(); }
    static Scalar one() { return Scalar(1); }
    static Scalar i() { return Scalar(GaussRat(rat(0), rat(1))); }
    static Scalar hbar(int power = 1) {
        Scalar s;
        s.add_term(power, GaussRat(rat(1)));
        return s;
    }
    static Scalar term(int hbar_pow, const GaussRat& c) {
        Scalar s;
        s.add_term(hbar_pow, c);
        return s;
    }

    bool is_zero() const { return terms_.empty(); }
    const std::map<int, GaussRat>& terms() const { return terms_; }

    // True iff the scalar is a single term c*hbar^k; used by exact inversion.
    bool is_monomial() const { return terms_.size() == 1; }

    Scalar operator-() const;
    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    bool operator==(const Scalar& o) const { return terms_ == o.terms_; }

    // Exact inverse of a single-term scalar; rejects multi-term scalars
    // (inverting those is not closed in the truncated Laurent ring).
    Scalar inverse() const;

    // Multiply by hbar^k (shift powers, truncating at the window).
    Scalar shifted(int k) const;

    // Coefficient of hbar^k.
    GaussRat coeff(int k) const;

    std::string to_string() const;

  private:
    void add_term(int pow, const GaussRat& c);
    std::map<int, GaussRat> terms_;
};

} // namespace bvk
