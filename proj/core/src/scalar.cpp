#include "ietlab/scalar.hpp"

#include <cctype>
#include <ostream>
#include <utility>

namespace ietlab {

namespace {

mpz_class parse_mpz(const std::string& digits, const std::string& whole) {
    if (digits.empty()) throw ParseError("expected digits in '" + whole + "'");
    for (char c : digits)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw ParseError("bad digit '" + std::string(1, c) + "' in '" + whole + "'");
    return mpz_class(digits, 10);
}

}  // namespace

Rational::Rational(long n, long d) {
    if (d == 0) throw DomainError("zero denominator");
    v_ = mpq_class(n, d);
    v_.canonicalize();
}

Rational::Rational(const mpz_class& n, const mpz_class& d) {
    if (d == 0) throw DomainError("zero denominator");
    v_ = mpq_class(n, d);
    v_.canonicalize();
}

Rational::Rational(mpq_class v) : v_(std::move(v)) {
    v_.canonicalize();
}

Rational Rational::parse(const std::string& text) {
    size_t i = 0;
    bool neg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        neg = text[i] == '-';
        ++i;
    }
    size_t slash = text.find('/', i);
    mpz_class num, den = 1;
    if (slash == std::string::npos) {
        num = parse_mpz(text.substr(i), text);
    } else {
        num = parse_mpz(text.substr(i, slash - i), text);
        den = parse_mpz(text.substr(slash + 1), text);
        if (den == 0) throw ParseError("zero denominator in '" + text + "'");
    }
    if (neg) num = -num;
    return Rational(num, den);
}

mpz_class Rational::floor() const {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
    return q;
}

Rational Rational::abs() const {
    Rational r = *this;
    if (r.sign() < 0) r.v_ = -r.v_;
    return r;
}

std::string Rational::str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational Rational::operator-() const {
    Rational r = *this;
    r.v_ = -r.v_;
    return r;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw DomainError("division by zero");
    v_ /= o.v_;
    return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
}

bool is_valid_radicand(unsigned long d) {
    // Complete up to 10^12: any square factor then has a prime root <= 10^6.
    if (d < 2 || d > 1000000000000UL) return false;
    for (unsigned long p = 2; p <= 1000000UL; ++p) {
        unsigned long sq = p * p;
        if (sq > d) break;
        if (d % sq == 0) return false;
    }
    return true;
}

Scalar::Scalar(Rational a, Rational b, unsigned long d)
    : a_(std::move(a)), b_(std::move(b)), d_(d) {
    if (b_.is_zero()) {
        d_ = 0;
        return;
    }
    if (!is_valid_radicand(d_))
        throw ParseError("radicand " + std::to_string(d_) +
                         " is not a square-free integer >= 2 (or exceeds 10^12)");
}

void Scalar::reduce() {
    if (b_.is_zero()) d_ = 0;
}

unsigned long Scalar::check_combine(const Scalar& x, const Scalar& y) {
    if (x.d_ == 0) return y.d_;
    if (y.d_ == 0) return x.d_;
    if (x.d_ != y.d_)
        throw FieldMismatchError("cannot combine sqrt(" + std::to_string(x.d_) +
                                 ") with sqrt(" + std::to_string(y.d_) + ")");
    return x.d_;
}

const Rational& Scalar::as_rational() const {
    if (d_ != 0)
        throw FieldMismatchError("value " + str() + " is not rational");
    return a_;
}

int Scalar::sign() const {
    int sa = a_.sign();
    int sb = b_.sign();
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Signs differ: the result follows whichever of a^2, b^2 d dominates.
    Rational a2 = a_ * a_;
    Rational b2d = b_ * b_ * Rational(static_cast<long>(d_));
    int c = a2 == b2d ? 0 : (a2 < b2d ? -1 : 1);
    if (c == 0) return 0;  // unreachable for square-free d, kept for safety
    return c > 0 ? sa : sb;
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    r.a_ = -r.a_;
    r.b_ = -r.b_;
    return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    d_ = check_combine(*this, o);
    a_ += o.a_;
    b_ += o.b_;
    reduce();
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    d_ = check_combine(*this, o);
    a_ -= o.a_;
    b_ -= o.b_;
    reduce();
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    unsigned long d = check_combine(*this, o);
    // (a + b sqrt d)(e + f sqrt d) = ae + bfd + (af + be) sqrt d
    Rational rd(static_cast<long>(d));
    Rational na = a_ * o.a_ + b_ * o.b_ * rd;
    Rational nb = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(na);
    b_ = std::move(nb);
    d_ = d;
    reduce();
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
    if (o.is_zero()) throw DomainError("division by zero");
    unsigned long d = check_combine(*this, o);
    Rational rd(static_cast<long>(d));
    // Multiply by the conjugate; the norm e^2 - f^2 d vanishes only at 0.
    Rational norm = o.a_ * o.a_ - o.b_ * o.b_ * rd;
    Rational na = (a_ * o.a_ - b_ * o.b_ * rd) / norm;
    Rational nb = (b_ * o.a_ - a_ * o.b_) / norm;
    a_ = std::move(na);
    b_ = std::move(nb);
    d_ = d;
    reduce();
    return *this;
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.d_ == b.d_) return a.a_ == b.a_ && a.b_ == b.b_;
    // Mixed field: equal only if both are actually rational (b parts zero).
    return a.b_.is_zero() && b.b_.is_zero() && a.a_ == b.a_;
}

std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
    int s = (a - b).sign();
    return s < 0 ? std::strong_ordering::less
         : s > 0 ? std::strong_ordering::greater
                 : std::strong_ordering::equal;
}

int compare(const Scalar& x, const Scalar& y) {
    return (x - y).sign();
}

std::pair<Rational, Rational> Scalar::bracket(unsigned bits) const {
    if (d_ == 0) return {a_, a_};
    // r = floor(sqrt(d * 4^bits)) encloses sqrt(d) in [r, r+1] / 2^bits.
    mpz_class scaled = mpz_class(d_) << (2 * bits);
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), scaled.get_mpz_t());
    mpz_class pow2 = mpz_class(1) << bits;
    Rational lo_s(r, pow2), hi_s(r + 1, pow2);
    if (b_.sign() >= 0) return {a_ + b_ * lo_s, a_ + b_ * hi_s};
    return {a_ + b_ * hi_s, a_ + b_ * lo_s};
}

mpz_class Scalar::floor() const {
    if (d_ == 0) return a_.floor();
    // The value is irrational, so a tight enough enclosure always decides.
    for (unsigned bits = 32; bits <= (1u << 20); bits *= 2) {
        auto [lo, hi] = bracket(bits);
        mpz_class fl = lo.floor(), fh = hi.floor();
        if (fl == fh) return fl;
    }
    throw DomainError("floor enclosure failed to converge for " + str());
}

mpz_class floor_div(const Scalar& x, const Scalar& y) {
    if (y.sign() <= 0) throw DomainError("floor_div requires a positive divisor");
    return (x / y).floor();
}

std::string Scalar::str() const {
    if (d_ == 0) return a_.str();
    std::string out = a_.str();
    out += b_.sign() < 0 ? "-" : "+";
    out += b_.abs().str();
    out += "*sqrt(" + std::to_string(d_) + ")";
    return out;
}

double Scalar::to_double() const {
    auto [lo, hi] = bracket(64);
    return (lo.to_double() + hi.to_double()) / 2;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) {
    return os << s.str();
}

namespace {

// Grammar: scalar := term (('+'|'-') term)*
//          term   := rational ['*' radical] | radical
//          radical:= 'sqrt(' digits ')'
struct ScalarParser {
    const std::string& s;
    size_t i = 0;

    explicit ScalarParser(const std::string& text) : s(text) {}

    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError(why + " in scalar '" + s + "'");
    }

    bool eat(char c) {
        if (i < s.size() && s[i] == c) { ++i; return true; }
        return false;
    }

    bool lookahead_sqrt() const { return s.compare(i, 5, "sqrt(") == 0; }

    mpz_class digits() {
        size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) fail("expected digits");
        return mpz_class(s.substr(start, i - start), 10);
    }

    Rational rational() {
        mpz_class num = digits();
        if (eat('/')) {
            mpz_class den = digits();
            if (den == 0) fail("zero denominator");
            return Rational(num, den);
        }
        return Rational(num, mpz_class(1));
    }

    unsigned long radical() {
        i += 5;  // past "sqrt("
        mpz_class d = digits();
        if (!eat(')')) fail("expected ')'");
        if (!d.fits_ulong_p()) fail("radicand out of range");
        return d.get_ui();
    }

    Scalar parse() {
        Scalar total;
        bool first = true;
        while (i < s.size()) {
            int sign = 1;
            if (eat('-')) sign = -1;
            else if (eat('+')) sign = 1;
            else if (!first) fail("expected '+' or '-'");
            first = false;

            Scalar term;
            if (lookahead_sqrt()) {
                term = Scalar::sqrt(radical());
            } else {
                Rational coeff = rational();
                if (eat('*')) {
                    if (!lookahead_sqrt()) fail("expected sqrt(...) after '*'");
                    term = Scalar(Rational(0), coeff, radical());
                } else {
                    term = Scalar(coeff);
                }
            }
            if (sign < 0) term = -term;
            total += term;
        }
        if (first) fail("empty scalar");
        return total;
    }
};

}  // namespace

Scalar Scalar::parse(const std::string& text) {
    std::string stripped;
    stripped.reserve(text.size());
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) stripped.push_back(c);
    ScalarParser p(stripped);
    return p.parse();
}

}  // namespace ietlab
