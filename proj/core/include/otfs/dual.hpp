#pragma once

// Forward-mode dual number carrying a runtime-sized gradient.
//
// The gradient lives in fixed-capacity storage (no heap traffic), sized at
// most kMaxDirections. A dual with an empty gradient is a constant; mixing
// constants with seeded duals treats the missing gradient as zero.
//
// Supported elementary operations: + - * /, pow, sqrt, sin, cos, exp, log.
// New operations follow the same pattern: value, then chain-rule factor
// times the argument gradient.

#include <Eigen/Core>

#include <cmath>

namespace otfs {

inline constexpr int kMaxDirections = 64;

class Dual {
  public:
    using Gradient = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDirections, 1>;

    Dual() : value_(0.0) {}
    Dual(double v) : value_(v) {} // NOLINT(google-explicit-constructor): constants promote implicitly
    Dual(double v, Gradient g) : value_(v), grad_(std::move(g)) {}

    /// Independent variable number `dir` out of `n` seeded directions.
    static Dual variable(double v, int dir, int n) {
        Gradient g = Gradient::Zero(n);
        g[dir] = 1.0;
        return Dual(v, std::move(g));
    }

    double value() const noexcept { return value_; }
    const Gradient& grad() const noexcept { return grad_; }
    /// Partial derivative in direction `i`; zero for constants.
    double d(int i) const { return grad_.size() == 0 ? 0.0 : grad_[i]; }

    Dual& operator+=(const Dual& o) { return *this = *this + o; }
    Dual& operator-=(const Dual& o) { return *this = *this - o; }
    Dual& operator*=(const Dual& o) { return *this = *this * o; }
    Dual& operator/=(const Dual& o) { return *this = *this / o; }

    friend Dual operator-(const Dual& a) { return Dual(-a.value_, -a.grad_); }

    friend Dual operator+(const Dual& a, const Dual& b) {
        return Dual(a.value_ + b.value_, combine(a.grad_, 1.0, b.grad_, 1.0));
    }
    friend Dual operator-(const Dual& a, const Dual& b) {
        return Dual(a.value_ - b.value_, combine(a.grad_, 1.0, b.grad_, -1.0));
    }
    friend Dual operator*(const Dual& a, const Dual& b) {
        return Dual(a.value_ * b.value_, combine(a.grad_, b.value_, b.grad_, a.value_));
    }
    friend Dual operator/(const Dual& a, const Dual& b) {
        const double inv = 1.0 / b.value_;
        const double q = a.value_ * inv;
        return Dual(q, combine(a.grad_, inv, b.grad_, -q * inv));
    }

    friend Dual operator+(const Dual& a, double b) { return Dual(a.value_ + b, a.grad_); }
    friend Dual operator+(double a, const Dual& b) { return Dual(a + b.value_, b.grad_); }
    friend Dual operator-(const Dual& a, double b) { return Dual(a.value_ - b, a.grad_); }
    friend Dual operator-(double a, const Dual& b) { return Dual(a - b.value_, -b.grad_); }
    friend Dual operator*(const Dual& a, double b) { return Dual(a.value_ * b, a.grad_ * b); }
    friend Dual operator*(double a, const Dual& b) { return Dual(a * b.value_, a * b.grad_); }
    friend Dual operator/(const Dual& a, double b) { return Dual(a.value_ / b, a.grad_ / b); }
    friend Dual operator/(double a, const Dual& b) {
        const double q = a / b.value_;
        return Dual(q, b.grad_ * (-q / b.value_));
    }

    friend bool operator<(const Dual& a, const Dual& b) { return a.value_ < b.value_; }
    friend bool operator>(const Dual& a, const Dual& b) { return a.value_ > b.value_; }
    friend bool operator<=(const Dual& a, const Dual& b) { return a.value_ <= b.value_; }
    friend bool operator>=(const Dual& a, const Dual& b) { return a.value_ >= b.value_; }

  private:
    /// sa*ga + sb*gb with empty gradients treated as zero.
    static Gradient combine(const Gradient& ga, double sa, const Gradient& gb, double sb) {
        if (ga.size() == 0) return sb * gb;
        if (gb.size() == 0) return sa * ga;
        return sa * ga + sb * gb;
    }

    double value_;
    Gradient grad_;
};

inline Dual chain(const Dual& a, double value, double derivative) {
    return Dual(value, a.grad() * derivative);
}

inline Dual sin(const Dual& a) { return chain(a, std::sin(a.value()), std::cos(a.value())); }
inline Dual cos(const Dual& a) { return chain(a, std::cos(a.value()), -std::sin(a.value())); }
inline Dual exp(const Dual& a) {
    const double e = std::exp(a.value());
    return chain(a, e, e);
}
inline Dual log(const Dual& a) { return chain(a, std::log(a.value()), 1.0 / a.value()); }
inline Dual sqrt(const Dual& a) {
    const double s = std::sqrt(a.value());
    return chain(a, s, 0.5 / s);
}

inline Dual pow(const Dual& a, int n) {
    if (n == 0) return Dual(1.0);
    return chain(a, std::pow(a.value(), n), n * std::pow(a.value(), n - 1));
}
inline Dual pow(const Dual& a, double p) {
    return chain(a, std::pow(a.value(), p), p * std::pow(a.value(), p - 1.0));
}

inline double value_of(double x) { return x; }
inline double value_of(const Dual& x) { return x.value(); }

} // namespace otfs
