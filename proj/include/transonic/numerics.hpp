#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/math/special_functions/fpclassify.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/interpolators/pchip.hpp>

namespace transonic::num {

inline constexpr double pi = 3.14159265358979323846;

// Adaptive Gauss-Kronrod on [a, b]; orientation-aware.
template <class F>
double integrate(const F& f, double a, double b, double tol = 1e-13) {
    if (a == b) return 0.0;
    using gk = boost::math::quadrature::gauss_kronrod<double, 15>;
    if (b < a) return -gk::integrate(f, b, a, 15, tol);
    return gk::integrate(f, a, b, 15, tol);
}

inline std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    x.back() = b;
    return x;
}

// n points with log-uniform spacing on [a, b], a, b > 0, ascending.
inline std::vector<double> logspace(double a, double b, std::size_t n) {
    std::vector<double> x = linspace(std::log(a), std::log(b), n);
    for (double& v : x) v = std::exp(v);
    x.front() = a;
    x.back() = b;
    return x;
}

// Fourth-order central first derivative.
template <class F>
double central4(const F& f, double x, double h) {
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

// Second-order central first/second derivatives.
template <class F>
double central2(const F& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2 * h);
}

template <class F>
double second_central(const F& f, double x, double h) {
    return (f(x + h) - 2 * f(x) + f(x - h)) / (h * h);
}

// Bisection for f(x) = 0 on [lo, hi]; f(lo) and f(hi) must bracket a root.
template <class F>
double bisect(const F& f, double lo, double hi, double xtol) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0) == (fhi > 0))
        throw std::domain_error("bisect: endpoints do not bracket a root");
    while (hi - lo > xtol) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Strictly monotone cubic interpolant (PCHIP). Used for inversion seeds.
class MonotoneCubic {
public:
    MonotoneCubic() = default;
    MonotoneCubic(std::vector<double> x, std::vector<double> y)
        : xmin_(x.front()), xmax_(x.back()),
          spline_(std::make_shared<impl_t>(std::move(x), std::move(y))) {}

    double operator()(double x) const {
        return (*spline_)(std::clamp(x, xmin_, xmax_));
    }
    double prime(double x) const {
        return spline_->prime(std::clamp(x, xmin_, xmax_));
    }
    double xmin() const { return xmin_; }
    double xmax() const { return xmax_; }

private:
    using impl_t = boost::math::interpolators::pchip<std::vector<double>>;
    double xmin_ = 0, xmax_ = 0;
    std::shared_ptr<impl_t> spline_;
};

// Reduce an angle difference to the angular distance in [0, pi].
inline double angular_distance(double a, double b) {
    double d = std::fmod(std::fabs(a - b), 2 * pi);
    return std::min(d, 2 * pi - d);
}

}  // namespace transonic::num
