#include "gsq/scalar.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace gsq {

namespace {
std::atomic<double> g_tolerance{1e-9};
}

double tolerance() { return g_tolerance.load(); }
void set_tolerance(double eps) { g_tolerance.store(eps); }

Scalar Scalar::from_double(double v) {
    Scalar s;
    s.exact_ = false;
    s.flt_ = v;
    return s;
}

Scalar Scalar::exact_from_double(double v) {
    if (!std::isfinite(v)) throw Error("cannot convert non-finite double to rational");
    return Scalar(Rational(v));
}

Scalar Scalar::parse(const std::string& text, bool exact) {
    if (text.empty()) throw Error("empty numeric literal");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        Int num(text.substr(0, slash));
        Int den(text.substr(slash + 1));
        if (den == 0) throw Error("zero denominator in literal '" + text + "'");
        Rational r(num, den);
        return exact ? Scalar(r) : Scalar::from_double(r.convert_to<double>());
    }
    if (text.find('.') == std::string::npos && text.find('e') == std::string::npos &&
        text.find('E') == std::string::npos) {
        Int num(text);
        return exact ? Scalar(Rational(num)) : Scalar::from_double(num.convert_to<double>());
    }
    size_t pos = 0;
    double v = std::stod(text, &pos);
    if (pos != text.size()) throw Error("trailing characters in literal '" + text + "'");
    return exact ? Scalar::exact_from_double(v) : Scalar::from_double(v);
}

const Rational& Scalar::rat() const {
    if (!exact_) throw Error("rat() called on inexact scalar");
    return rat_;
}

double Scalar::as_double() const {
    return exact_ ? rat_.convert_to<double>() : flt_;
}

Scalar Scalar::operator-() const {
    if (exact_) return Scalar(Rational(-rat_));
    return from_double(-flt_);
}

Scalar& Scalar::operator+=(const Scalar& o) {
    if (exact_ && o.exact_) {
        rat_ += o.rat_;
    } else {
        double v = as_double() + o.as_double();
        exact_ = false;
        flt_ = v;
    }
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    if (exact_ && o.exact_) {
        rat_ -= o.rat_;
    } else {
        double v = as_double() - o.as_double();
        exact_ = false;
        flt_ = v;
    }
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    if (exact_ && o.exact_) {
        rat_ *= o.rat_;
    } else {
        double v = as_double() * o.as_double();
        exact_ = false;
        flt_ = v;
    }
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
    if (exact_ && o.exact_) {
        if (o.rat_ == 0) throw Error("division by zero");
        rat_ /= o.rat_;
    } else {
        double d = o.as_double();
        if (d == 0.0) throw Error("division by zero");
        double v = as_double() / d;
        exact_ = false;
        flt_ = v;
    }
    return *this;
}

Scalar Scalar::abs() const {
    if (exact_) return Scalar(Rational(boost::multiprecision::abs(rat_)));
    return from_double(std::fabs(flt_));
}

int Scalar::sign() const { return sign(tolerance()); }

int Scalar::sign(double eps) const {
    if (exact_) {
        if (rat_ == 0) return 0;
        return rat_ < 0 ? -1 : 1;
    }
    if (std::fabs(flt_) <= eps) return 0;
    return flt_ < 0 ? -1 : 1;
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.exact_ && b.exact_) return a.rat_ == b.rat_;
    return a.as_double() == b.as_double();
}

bool operator<(const Scalar& a, const Scalar& b) {
    if (a.exact_ && b.exact_) return a.rat_ < b.rat_;
    return a.as_double() < b.as_double();
}

bool operator<=(const Scalar& a, const Scalar& b) {
    if (a.exact_ && b.exact_) return a.rat_ <= b.rat_;
    return a.as_double() <= b.as_double();
}

std::string Scalar::str() const {
    if (exact_) {
        std::ostringstream out;
        if (denominator(rat_) == 1) {
            out << numerator(rat_);
        } else {
            out << numerator(rat_) << "/" << denominator(rat_);
        }
        return out.str();
    }
    std::ostringstream out;
    out.precision(17);
    out << flt_;
    return out.str();
}

bool approx_equal(const Scalar& a, const Scalar& b, double tol) {
    double x = a.as_double(), y = b.as_double();
    double scale = std::max({1.0, std::fabs(x), std::fabs(y)});
    return std::fabs(x - y) <= tol * scale;
}

} // namespace gsq
