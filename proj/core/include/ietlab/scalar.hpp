#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include <gmpxx.h>

#include "ietlab/errors.hpp"

namespace ietlab {

// Exact rational number.  Thin value wrapper over GMP's mpq_class that
// keeps every value canonical (reduced, positive denominator) and adds the
// parsing, printing and floor conventions used across the library.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}
    Rational(long n, long d);
    explicit Rational(const mpz_class& n) : v_(n) {}
    Rational(const mpz_class& n, const mpz_class& d);
    explicit Rational(mpq_class v);

    // Accepts "p", "p/q" and an optional leading sign.  Throws ParseError.
    static Rational parse(const std::string& text);

    const mpq_class& value() const { return v_; }
    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }

    int sign() const { return sgn(v_); }
    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }

    mpz_class floor() const;

    Rational abs() const;
    // Canonical text: "p" for integers, otherwise "p/q" with q > 1.
    std::string str() const;
    double to_double() const { return v_.get_d(); }

    Rational operator-() const;
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { a += b; return a; }
    friend Rational operator-(Rational a, const Rational& b) { a -= b; return a; }
    friend Rational operator*(Rational a, const Rational& b) { a *= b; return a; }
    friend Rational operator/(Rational a, const Rational& b) { a /= b; return a; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

private:
    mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

// Element of Q or of a real quadratic field Q(sqrt(d)): value a + b*sqrt(d)
// with a, b rational and d a square-free integer >= 2.  Pure rationals carry
// d = 0 and b = 0; they combine freely with elements of any field.  Two
// values with different nonzero d refuse to combine (FieldMismatchError).
//
// The represented real number determines the value: comparisons, signs and
// floors are exact, with no floating point anywhere on those paths.
class Scalar {
public:
    Scalar() : d_(0) {}
    Scalar(long n) : a_(n), d_(0) {}
    Scalar(Rational a) : a_(std::move(a)), d_(0) {}
    // a + b*sqrt(d).  Validates d square-free (>= 2) unless b == 0.
    Scalar(Rational a, Rational b, unsigned long d);

    // sqrt(d) as a Scalar.
    static Scalar sqrt(unsigned long d) { return Scalar(Rational(0), Rational(1), d); }
    // Accepts the canonical forms "p/q" and "p/q+r/s*sqrt(d)" as well as the
    // natural variants: "-1/2", "3*sqrt(5)", "sqrt(2)", "1-2/3*sqrt(7)".
    static Scalar parse(const std::string& text);

    const Rational& rational_part() const { return a_; }
    const Rational& radical_part() const { return b_; }
    unsigned long radicand() const { return d_; }

    bool is_rational() const { return d_ == 0; }
    // Throws FieldMismatchError if a radical part is present.
    const Rational& as_rational() const;

    int sign() const;
    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

    mpz_class floor() const;

    Scalar abs() const { return sign() < 0 ? -*this : *this; }
    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { a += b; return a; }
    friend Scalar operator-(Scalar a, const Scalar& b) { a -= b; return a; }
    friend Scalar operator*(Scalar a, const Scalar& b) { a *= b; return a; }
    friend Scalar operator/(Scalar a, const Scalar& b) { a /= b; return a; }

    friend bool operator==(const Scalar& a, const Scalar& b);
    friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b);

    // Rational enclosure [lo, hi] with hi - lo <= |b| * 2^-bits.
    std::pair<Rational, Rational> bracket(unsigned bits = 64) const;

    // Canonical text: rationals print as Rational::str(); quadratic values
    // print as "a+r/s*sqrt(d)" or "a-r/s*sqrt(d)" with a always present.
    std::string str() const;
    // Approximate; for display columns only.
    double to_double() const;

private:
    Rational a_, b_;
    unsigned long d_;  // 0 iff the value is rational

    void reduce();  // clears d_ when b_ becomes 0
    static unsigned long check_combine(const Scalar& x, const Scalar& y);
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

// sign(x - y) as an int, the comparison primitive named in the interfaces.
int compare(const Scalar& x, const Scalar& y);

// floor(x / y) for y > 0; throws DomainError otherwise.
mpz_class floor_div(const Scalar& x, const Scalar& y);

// True iff d is square-free and >= 2 (valid radicand).
bool is_valid_radicand(unsigned long d);

}  // namespace ietlab
