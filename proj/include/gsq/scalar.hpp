#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace gsq {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};
struct SingularMatrixError : Error {
    explicit SingularMatrixError(const std::string& msg) : Error(msg) {}
};
struct NotPositiveDefiniteError : Error {
    explicit NotPositiveDefiniteError(const std::string& msg) : Error(msg) {}
};
struct NotIrreducibleError : Error {
    explicit NotIrreducibleError(const std::string& msg) : Error(msg) {}
};
struct OrderTooLargeError : Error {
    explicit OrderTooLargeError(const std::string& msg) : Error(msg) {}
};
struct BudgetExceededError : Error {
    explicit BudgetExceededError(const std::string& msg) : Error(msg) {}
};
struct AssertionViolationError : Error {
    explicit AssertionViolationError(const std::string& msg) : Error(msg) {}
};

// Tolerance used by every sign/zero decision made on inexact scalars.
double tolerance();
void set_tolerance(double eps);

// A number that is either an exact rational (arbitrary precision) or a
// double. Arithmetic between two exact values stays exact; any operation
// touching an inexact value produces an inexact value.
class Scalar {
public:
    Scalar() : exact_(true), rat_(0) {}
    Scalar(int v) : exact_(true), rat_(v) {}
    Scalar(long long v) : exact_(true), rat_(Int(v)) {}
    Scalar(Int v) : exact_(true), rat_(std::move(v)) {}
    Scalar(Rational v) : exact_(true), rat_(std::move(v)) {}

    static Scalar from_double(double v);
    // Converts the binary value of v to a rational, exactly.
    static Scalar exact_from_double(double v);
    // Accepts "p/q", integers, and decimal/scientific literals. Decimal
    // literals in exact mode are converted through their binary double
    // value, which is exact but may surprise ("0.1" is not 1/10).
    static Scalar parse(const std::string& text, bool exact);

    bool exact() const { return exact_; }
    const Rational& rat() const;
    double as_double() const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    Scalar abs() const;
    // -1 / 0 / +1. Exact values use the exact sign; inexact values treat
    // |v| <= tolerance() as zero.
    int sign() const;
    int sign(double eps) const;
    bool is_zero() const { return sign() == 0; }

    // Exact scalars compare by rational value; if either side is inexact
    // the comparison falls back to doubles (no tolerance).
    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
    friend bool operator<(const Scalar& a, const Scalar& b);
    friend bool operator<=(const Scalar& a, const Scalar& b);
    friend bool operator>(const Scalar& a, const Scalar& b) { return b < a; }
    friend bool operator>=(const Scalar& a, const Scalar& b) { return b <= a; }

    // "p/q" (or "p" when q == 1) for exact values, shortest round-trip
    // decimal for inexact ones.
    std::string str() const;

private:
    bool exact_;
    Rational rat_;
    double flt_ = 0.0;
};

// |a - b| <= tol * max(1, |a|, |b|), evaluated in doubles.
bool approx_equal(const Scalar& a, const Scalar& b, double tol);

} // namespace gsq
