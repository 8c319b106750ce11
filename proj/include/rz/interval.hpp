#pragma once

// Outward-rounded interval arithmetic.
//
// Rounding is done in round-to-nearest mode; every endpoint is then pushed
// one representable value outward, but only when an error-free
// transformation (TwoSum / FMA) shows the rounded result is inexact in that
// direction. Exact operations therefore stay exact.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <limits>
#include <ostream>

#include <Eigen/Core>

#include "rz/error.hpp"

namespace rz {

namespace rounding {

template <std::floating_point T>
inline T up(T x) {
    return std::nextafter(x, std::numeric_limits<T>::infinity());
}

template <std::floating_point T>
inline T down(T x) {
    return std::nextafter(x, -std::numeric_limits<T>::infinity());
}

// Below this magnitude the FMA residual of a product may itself be rounded.
template <std::floating_point T>
inline constexpr T tiny = std::numeric_limits<T>::min() * T(1) / std::numeric_limits<T>::epsilon();

template <std::floating_point T>
inline T add_down(T a, T b) {
    const T s = a + b;
    const T bb = s - a;
    const T err = (a - (s - bb)) + (b - bb);
    return err < 0 ? down(s) : s;
}

template <std::floating_point T>
inline T add_up(T a, T b) {
    const T s = a + b;
    const T bb = s - a;
    const T err = (a - (s - bb)) + (b - bb);
    return err > 0 ? up(s) : s;
}

template <std::floating_point T>
inline T mul_down(T a, T b) {
    if (a == 0 || b == 0) return T(0);
    const T p = a * b;
    if (std::abs(p) < tiny<T>) return down(p);
    const T err = std::fma(a, b, -p);
    return err < 0 ? down(p) : p;
}

template <std::floating_point T>
inline T mul_up(T a, T b) {
    if (a == 0 || b == 0) return T(0);
    const T p = a * b;
    if (std::abs(p) < tiny<T>) return up(p);
    const T err = std::fma(a, b, -p);
    return err > 0 ? up(p) : p;
}

template <std::floating_point T>
inline T sqrt_down(T x) {
    if (x <= 0) return 0;
    const T r = std::sqrt(x);
    return std::fma(r, r, -x) > 0 ? down(r) : r;
}

}  // namespace rounding

/// Closed interval [lo, hi] with finite endpoints.
template <std::floating_point T>
class BasicInterval {
public:
    using value_type = T;

    constexpr BasicInterval() = default;

    // Implicit: a scalar is the degenerate interval containing it.
    constexpr BasicInterval(T v) : lo_(v), hi_(v) {}  // NOLINT(google-explicit-constructor)

    BasicInterval(T lo, T hi) : lo_(lo), hi_(hi) {
        if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
            throw Error(ErrorCode::InvalidArgument, "interval endpoints must be finite with lo <= hi");
        }
    }

    /// The degenerate interval at v widened by one ulp on each side.
    static BasicInterval widened(T v) { return {rounding::down(v), rounding::up(v)}; }

    static BasicInterval hull(T a, T b) { return {std::min(a, b), std::max(a, b)}; }

    T lo() const { return lo_; }
    T hi() const { return hi_; }

    /// Upper bound on hi - lo.
    T width() const { return rounding::add_up(hi_, -lo_); }
    T mid() const { return lo_ + (hi_ - lo_) / 2; }
    /// Upper bound on max |t| over the interval.
    T mag() const { return std::max(std::abs(lo_), std::abs(hi_)); }
    /// Lower bound on min |t| over the interval.
    T mig() const { return contains(T(0)) ? T(0) : std::min(std::abs(lo_), std::abs(hi_)); }

    bool is_point() const { return lo_ == hi_; }
    bool contains(T v) const { return lo_ <= v && v <= hi_; }
    bool contains(const BasicInterval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
    bool intersects(const BasicInterval& o) const { return lo_ <= o.hi_ && o.lo_ <= hi_; }

    BasicInterval& operator+=(const BasicInterval& o) { return *this = *this + o; }
    BasicInterval& operator-=(const BasicInterval& o) { return *this = *this - o; }
    BasicInterval& operator*=(const BasicInterval& o) { return *this = *this * o; }

    friend BasicInterval operator+(const BasicInterval& a, const BasicInterval& b) {
        return raw(rounding::add_down(a.lo_, b.lo_), rounding::add_up(a.hi_, b.hi_));
    }

    friend BasicInterval operator-(const BasicInterval& a, const BasicInterval& b) {
        return raw(rounding::add_down(a.lo_, -b.hi_), rounding::add_up(a.hi_, -b.lo_));
    }

    friend BasicInterval operator-(const BasicInterval& a) { return raw(-a.hi_, -a.lo_); }

    friend BasicInterval operator*(const BasicInterval& a, const BasicInterval& b) {
        if (a.is_point() && b.is_point()) {
            return raw(rounding::mul_down(a.lo_, b.lo_), rounding::mul_up(a.lo_, b.lo_));
        }
        const T c[4][2] = {{a.lo_, b.lo_}, {a.lo_, b.hi_}, {a.hi_, b.lo_}, {a.hi_, b.hi_}};
        T lo = std::numeric_limits<T>::infinity();
        T hi = -std::numeric_limits<T>::infinity();
        for (const auto& [x, y] : c) {
            lo = std::min(lo, rounding::mul_down(x, y));
            hi = std::max(hi, rounding::mul_up(x, y));
        }
        return raw(lo, hi);
    }

    friend bool operator==(const BasicInterval& a, const BasicInterval& b) {
        return a.lo_ == b.lo_ && a.hi_ == b.hi_;
    }

    friend std::ostream& operator<<(std::ostream& os, const BasicInterval& x) {
        return os << '[' << x.lo_ << ", " << x.hi_ << ']';
    }

private:
    static BasicInterval raw(T lo, T hi) {
        BasicInterval r;
        r.lo_ = lo;
        r.hi_ = hi;
        return r;
    }

    T lo_{0};
    T hi_{0};
};

using Interval = BasicInterval<double>;

}  // namespace rz

namespace Eigen {

template <typename T>
struct NumTraits<rz::BasicInterval<T>> : GenericNumTraits<rz::BasicInterval<T>> {
    using Real = rz::BasicInterval<T>;
    using NonInteger = rz::BasicInterval<T>;
    using Nested = rz::BasicInterval<T>;
    using Literal = T;

    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 2,
        AddCost = 4,
        MulCost = 8,
    };
};

}  // namespace Eigen

namespace rz {

template <std::floating_point T>
BasicInterval<T> hull(const BasicInterval<T>& a, const BasicInterval<T>& b) {
    return {std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi())};
}

template <std::floating_point T>
BasicInterval<T> sqr(const BasicInterval<T>& x) {
    const T m = x.mig();
    const T M = x.mag();
    return {rounding::mul_down(m, m), rounding::mul_up(M, M)};
}

/// Tight outward enclosure of {cos t : t in x}.
Interval range_cos(const Interval& x);

/// Tight outward enclosure of {sin t : t in x}.
Interval range_sin(const Interval& x);

template <typename T>
using Vec2 = Eigen::Matrix<T, 2, 1>;

using IVec2 = Vec2<Interval>;

inline IVec2 to_interval(const Eigen::Vector2d& p) { return {Interval(p.x()), Interval(p.y())}; }

/// Enclosure of a - b for exact double vectors.
inline IVec2 difference(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    return to_interval(a) - to_interval(b);
}

/// Enclosure of <a, b> where b is an exact double vector.
inline Interval dot(const IVec2& a, const Eigen::Vector2d& b) {
    return a.x() * Interval(b.x()) + a.y() * Interval(b.y());
}

/// Upper bound on the Euclidean norm.
inline double norm_up(const IVec2& a) {
    const Interval n2 = sqr(a.x()) + sqr(a.y());
    const double r = std::sqrt(n2.hi());
    return rounding::up(r);
}

}  // namespace rz
