#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include "transonic/errors.hpp"
#include "transonic/gas.hpp"
#include "transonic/numerics.hpp"

namespace transonic {

// A point of the (q, theta) phase plane. theta is stored unwrapped.
struct PhaseState {
    double q = 0.0;
    double theta = 0.0;

    double u() const { return q * std::cos(theta); }
    double v() const { return q * std::sin(theta); }

    static PhaseState from_uv(double u, double v) {
        return {std::hypot(u, v), std::atan2(v, u)};
    }
};

// Landau-Lifshitz supersonic speed profile W(q), valid on [q_cr, q_cav]
// (q >= 1 when gamma = 1). Strictly increasing, W(q_cr) = 0, and
// dW/dq = sqrt(q^2 - c^2)/(q c).
inline double w_profile(const GasModel& gas, double q) {
    double qcr = gas.critical_speed();
    if (q < qcr * (1.0 - 1e-12))
        throw std::domain_error("w_profile: q below sonic");
    q = std::max(q, qcr);
    if (gas.isothermal())
        return std::sqrt(q * q - 1.0) - std::acos(1.0 / q);
    if (q > gas.cavitation_speed() * (1.0 + 1e-12))
        throw std::domain_error("w_profile: q beyond cavitation");
    double g = gas.gamma();
    double k = std::sqrt((g + 1.0) / (g - 1.0));
    double a1 = 0.5 * (g - 1.0) * (q * q / (qcr * qcr) - 1.0);
    double a2 = 0.5 * (g + 1.0) * (1.0 - qcr * qcr / (q * q));
    a1 = std::clamp(a1, 0.0, 1.0);
    a2 = std::clamp(a2, 0.0, 1.0);
    return k * std::asin(std::sqrt(a1)) - std::asin(std::sqrt(a2));
}

// |d theta / d q| along W_+- level curves: sqrt(q^2 - c^2)/(q c).
inline double level_curve_slope(const GasModel& gas, double q) {
    if (q <= gas.critical_speed())
        throw std::domain_error("level_curve_slope: q not supersonic");
    double c = gas.sound_speed(q);
    return std::sqrt(std::max(0.0, q * q - c * c)) / (q * c);
}

// Riemann invariants W_+- = theta -+ (W(q) - W(q_anchor)) for supersonic q.
inline std::pair<double, double> riemann_invariants(const GasModel& gas,
                                                    const PhaseState& s,
                                                    double q_anchor) {
    double gap = w_profile(gas, s.q) - w_profile(gas, q_anchor);
    return {s.theta - gap, s.theta + gap};
}

// Total angular sweep a(gamma) = W(q_cav) - W(sqrt(2) q_cr), closed form.
// Strictly decreasing on (1, 3); a -> +inf as gamma -> 1+, a -> 0 as
// gamma -> 3-.
inline double a_of_gamma(double gamma) {
    if (!(gamma > 1.0) || !(gamma < 3.0))
        throw std::domain_error("a_of_gamma: gamma outside (1, 3)");
    double k = std::sqrt((gamma + 1.0) / (gamma - 1.0));
    return (k - 1.0) * num::pi / 2.0 -
           (k * std::asin(std::sqrt(0.5 * (gamma - 1.0))) -
            std::asin(std::sqrt(0.25 * (gamma + 1.0))));
}

// Root of a(gamma) = pi; approximately 1.224.
inline double find_gamma_star() {
    return num::bisect([](double g) { return a_of_gamma(g) - num::pi; },
                       1.0 + 1e-9, 3.0 - 1e-9, 1e-8);
}

// Inverse of the W profile by monotone bisection on [q_cr, q_cav).
inline double w_inverse(const GasModel& gas, double w_target) {
    double qcr = gas.critical_speed();
    if (w_target < -1e-14) throw std::domain_error("w_inverse: negative target");
    if (w_target <= 0.0) return qcr;
    double hi;
    if (gas.isothermal()) {
        hi = 2.0 * qcr;
        while (w_profile(gas, hi) < w_target) hi *= 2.0;
    } else {
        hi = gas.cavitation_speed();
        if (w_target > w_profile(gas, hi) + 1e-12)
            throw std::domain_error("w_inverse: target beyond W(q_cav)");
    }
    auto f = [&](double q) { return w_profile(gas, q) - w_target; };
    return num::bisect(f, qcr, hi, 1e-12 * std::max(1.0, hi));
}

struct ContainsResult {
    bool inside = false;
    // min_j angdist(theta, theta0 + 2 pi j/m) - (W(q) - W(q0)); >= 0 inside.
    double margin = 0.0;
};

// Family of m rotated "apple" regions anchored at (q0, theta0), q0 >=
// sqrt(2) q_cr. A state is inside when q <= q0 or when the W-gap does not
// exceed the angular distance to the nearest anchor angle.
class InvariantRegion {
public:
    static InvariantRegion build(const GasModel& gas, double q0, double theta0) {
        double j = std::sqrt(2.0) * gas.critical_speed();
        if (q0 < j * (1.0 - 1e-12))
            throw std::domain_error("InvariantRegion: q0 below sqrt(2) q_cr");
        if (!(q0 < gas.cavitation_speed()))
            throw construction_error("InvariantRegion: q0 at or beyond cavitation");
        InvariantRegion r;
        r.gas_ = gas;
        r.q0_ = std::max(q0, j);
        r.theta0_ = theta0;
        r.w_q0_ = w_profile(gas, r.q0_);
        if (gas.isothermal()) {
            r.a_eff_ = std::numeric_limits<double>::infinity();
        } else {
            r.a_eff_ = w_profile(gas, gas.cavitation_speed()) - r.w_q0_;
        }
        if (!(r.a_eff_ > 0.0))
            throw construction_error("InvariantRegion: empty angular sweep");
        if (r.a_eff_ > num::pi) {
            r.m_ = 1;  // single apple closes by self-intersection
        } else {
            r.m_ = static_cast<int>(std::floor(num::pi / r.a_eff_)) + 1;
            while (!(num::pi / r.m_ < r.a_eff_)) ++r.m_;
        }
        r.q_star_ = w_inverse(gas, r.w_q0_ + num::pi / r.m_);
        return r;
    }

    int copies() const { return m_; }
    double q0() const { return q0_; }
    double theta0() const { return theta0_; }
    double a_eff() const { return a_eff_; }
    // Global speed cap; strictly below cavitation.
    double q_star() const { return q_star_; }

    // Speed cap in direction theta.
    double q_cap(double theta) const {
        return w_inverse(gas_, w_q0_ + anchor_distance(theta));
    }

    ContainsResult contains(const PhaseState& s) const {
        double d = anchor_distance(s.theta);
        double gap = w_gap(s.q);
        return {s.q <= q0_ || gap <= d, d - gap};
    }

    // Closed boundary polyline q_b(theta) = W^-1(W(q0) + min_j angdist),
    // sampled at n angles starting from theta0.
    std::vector<PhaseState> boundary_polyline(std::size_t n = 720) const {
        std::vector<PhaseState> poly;
        poly.reserve(n + 1);
        for (std::size_t i = 0; i <= n; ++i) {
            double th = theta0_ + 2.0 * num::pi * static_cast<double>(i) /
                                      static_cast<double>(n);
            poly.push_back({q_cap(th), th});
        }
        return poly;
    }

private:
    InvariantRegion() : gas_(GasModel(1.0)) {}

    double anchor_distance(double theta) const {
        double best = num::pi;
        for (int j = 0; j < m_; ++j) {
            double a = theta0_ + 2.0 * num::pi * j / m_;
            best = std::min(best, num::angular_distance(theta, a));
        }
        return best;
    }

    // W(q) - W(q0), extended linearly below sonic so that containment
    // queries stay monotone in q for subsonic states.
    double w_gap(double q) const {
        double qcr = gas_.critical_speed();
        if (q >= qcr) return w_profile(gas_, q) - w_q0_;
        return -w_q0_ - (qcr - q);
    }

    GasModel gas_;
    double q0_ = 0, theta0_ = 0, w_q0_ = 0, a_eff_ = 0, q_star_ = 0;
    int m_ = 1;
};

}  // namespace transonic
