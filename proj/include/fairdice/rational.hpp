#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace fairdice {

// Arbitrary-precision rational, kept in lowest terms with a positive
// denominator. Thin wrapper over GMP's mpq_class that canonicalizes on
// every construction path and rejects zero denominators up front (raw
// mpq would SIGFPE instead).
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long num) : v_(num) {}  // NOLINT: implicit by design, mirrors integer literals
    Rational(long num, long den) : v_(num, den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        v_.canonicalize();
    }

    // Accepts "3", "-3", or "3/7". No decimal notation.
    static Rational from_string(const std::string& s) {
        mpq_class q;
        try {
            q = mpq_class(s);
        } catch (const std::invalid_argument&) {
            throw std::domain_error("Rational: cannot parse '" + s + "'");
        }
        if (q.get_den() == 0) throw std::domain_error("Rational: zero denominator in '" + s + "'");
        q.canonicalize();
        return Rational(std::move(q));
    }

    Rational operator-() const { return Rational(mpq_class(-v_)); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.v_ == 0) throw std::domain_error("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { a += b; return a; }
    friend Rational operator-(Rational a, const Rational& b) { a -= b; return a; }
    friend Rational operator*(Rational a, const Rational& b) { a *= b; return a; }
    friend Rational operator/(Rational a, const Rational& b) { a /= b; return a; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    int sign() const { return sgn(v_); }
    double to_double() const { return v_.get_d(); }

    std::string num_str() const { return v_.get_num().get_str(); }
    std::string den_str() const { return v_.get_den().get_str(); }

    // "num/den", or just "num" when the denominator is 1.
    std::string to_string() const {
        if (v_.get_den() == 1) return num_str();
        return num_str() + "/" + den_str();
    }

    friend Rational abs(const Rational& a) { return Rational(mpq_class(::abs(a.v_))); }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        return os << r.to_string();
    }

private:
    explicit Rational(mpq_class q) : v_(std::move(q)) {}
    mpq_class v_;
};

}  // namespace fairdice
