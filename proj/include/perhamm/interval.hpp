#pragma once

#include <algorithm>
#include <cmath>
#include <ostream>

namespace perhamm {

/// Closed interval [lo, hi] with finite endpoints.
///
/// Endpoints are not outward-rounded, so enclosures are sound only up to
/// floating-point rounding of the endpoint arithmetic.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    constexpr Interval() = default;
    constexpr Interval(double point) : lo(point), hi(point) {}  // NOLINT(google-explicit-constructor)
    constexpr Interval(double lower, double upper) : lo(lower), hi(upper) {}

    constexpr double width() const { return hi - lo; }
    constexpr double mid() const { return 0.5 * (lo + hi); }
    constexpr bool contains(double x) const { return lo <= x && x <= hi; }
    constexpr bool contains_zero() const { return lo <= 0.0 && 0.0 <= hi; }
    constexpr bool is_point() const { return lo == hi; }
    bool is_finite() const { return std::isfinite(lo) && std::isfinite(hi); }

    friend constexpr bool operator==(const Interval&, const Interval&) = default;
};

inline Interval hull(const Interval& a, const Interval& b) {
    return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

inline Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
inline Interval operator-(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }
inline Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }

inline Interval operator*(const Interval& a, const Interval& b) {
    // 0 * inf must not poison the enclosure; products of finite endpoints only.
    const double p1 = a.lo * b.lo;
    const double p2 = a.lo * b.hi;
    const double p3 = a.hi * b.lo;
    const double p4 = a.hi * b.hi;
    return {std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4})};
}

inline std::ostream& operator<<(std::ostream& os, const Interval& x) {
    return os << '[' << x.lo << ", " << x.hi << ']';
}

}  // namespace perhamm
