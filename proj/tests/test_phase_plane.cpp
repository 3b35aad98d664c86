#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "transonic/gas.hpp"
#include "transonic/phase_plane.hpp"

using namespace transonic;
using Catch::Approx;

namespace {
constexpr double kPi = num::pi;
}

TEST_CASE("W profile basics", "[phaseplane]") {
    for (double g : {1.0, 1.4, 2.0}) {
        GasModel gas(g);
        CHECK(w_profile(gas, gas.critical_speed()) == Approx(0.0).margin(1e-12));
        CHECK_THROWS_AS(w_profile(gas, 0.5 * gas.critical_speed()),
                        std::domain_error);
    }

    // near gamma = 3 the whole supersonic sweep collapses
    CHECK(a_of_gamma(2.999) < 0.02);

    // dW/dq = sqrt(q^2-c^2)/(q c) at q = sqrt(2) q_cr, finite differences
    for (double g : {1.0, 1.2, 1.4, 2.0, 2.8}) {
        GasModel gas(g);
        double q = std::sqrt(2.0) * gas.critical_speed();
        double h = 1e-6 * q;
        double fd = (w_profile(gas, q + h) - w_profile(gas, q - h)) / (2 * h);
        double c = gas.sound_speed(q);
        CHECK(fd == Approx(std::sqrt(q * q - c * c) / (q * c)).epsilon(1e-6));
    }

    // strictly increasing
    GasModel air(1.4);
    double prev = -1.0;
    for (int i = 0; i <= 50; ++i) {
        double q = air.critical_speed() +
                   (air.cavitation_speed() - air.critical_speed()) * i / 50.0;
        double w = w_profile(air, q);
        CHECK(w > prev - 1e-15);
        prev = w;
    }
}

TEST_CASE("level curve slope", "[phaseplane]") {
    GasModel iso(1.0);
    CHECK(level_curve_slope(iso, std::sqrt(2.0)) ==
          Approx(1.0 / std::sqrt(2.0)).epsilon(1e-13));
    CHECK(level_curve_slope(iso, 2.0) == Approx(std::sqrt(3.0) / 2.0).epsilon(1e-13));
    CHECK(level_curve_slope(iso, 1.0 + 1e-9) < 1e-4);
    CHECK_THROWS_AS(level_curve_slope(iso, 0.9), std::domain_error);
}

TEST_CASE("Riemann invariants anchor identity and slopes", "[phaseplane]") {
    GasModel iso(1.0);
    auto [wp, wm] = riemann_invariants(iso, {std::sqrt(2.0), 0.3}, std::sqrt(2.0));
    CHECK(wp == Approx(0.3).margin(0.0));
    CHECK(wm == Approx(0.3).margin(0.0));

    std::mt19937 rng(3);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (double g : {1.0, 1.2, 1.4, 2.0, 2.8}) {
        GasModel gas(g);
        double qcr = gas.critical_speed();
        double qhi = gas.isothermal() ? 3.0 : 0.95 * gas.cavitation_speed();
        for (int i = 0; i < 20; ++i) {
            double q = qcr * 1.05 + (qhi - qcr * 1.05) * unif(rng);
            double th = -1.0 + 2.0 * unif(rng);
            double anchor = qcr * 1.02;

            // d W_+- / d theta = 1 exactly
            double hth = 1e-5;
            auto at_theta = [&](double t) {
                return riemann_invariants(gas, {q, t}, anchor);
            };
            CHECK((at_theta(th + hth).first - at_theta(th - hth).first) / (2 * hth) ==
                  Approx(1.0).margin(1e-12));
            CHECK((at_theta(th + hth).second - at_theta(th - hth).second) / (2 * hth) ==
                  Approx(1.0).margin(1e-12));

            // d W_+- / d q = -+ sqrt(q^2-c^2)/(q c)
            double hq = 1e-6 * q;
            auto at_q = [&](double qq) {
                return riemann_invariants(gas, {qq, th}, anchor);
            };
            double slope = level_curve_slope(gas, q);
            CHECK((at_q(q + hq).first - at_q(q - hq).first) / (2 * hq) ==
                  Approx(-slope).epsilon(1e-6));
            CHECK((at_q(q + hq).second - at_q(q - hq).second) / (2 * hq) ==
                  Approx(slope).epsilon(1e-6));
        }
    }

    GasModel air(1.4);
    CHECK_THROWS_AS(riemann_invariants(air, {0.5 * air.critical_speed(), 0.0},
                                       air.critical_speed()),
                    std::domain_error);
}

TEST_CASE("a(gamma) closed form", "[phaseplane]") {
    double gs = find_gamma_star();
    CHECK(gs > 1.2);
    CHECK(gs < 1.25);
    CHECK(gs == Approx(1.224).margin(1e-3));
    CHECK(a_of_gamma(gs) == Approx(kPi).margin(1e-7));
    CHECK(a_of_gamma(1.1) > kPi);
    CHECK(a_of_gamma(1.0001) > 10.0);

    // strictly decreasing on (1.05, 2.95)
    double prev = a_of_gamma(1.05);
    for (int i = 1; i <= 50; ++i) {
        double g = 1.05 + (2.95 - 1.05) * i / 50.0;
        double a = a_of_gamma(g);
        CHECK(a < prev);
        prev = a;
    }

    // cross-check against the W profile itself
    for (double g : {1.3, 1.7, 2.2, 2.8}) {
        GasModel gas(g);
        double direct = w_profile(gas, gas.cavitation_speed()) -
                        w_profile(gas, std::sqrt(2.0) * gas.critical_speed());
        CHECK(a_of_gamma(g) == Approx(direct).epsilon(1e-12));
    }

    CHECK_THROWS_AS(a_of_gamma(1.0), std::domain_error);
    CHECK_THROWS_AS(a_of_gamma(3.0), std::domain_error);
}

TEST_CASE("invariant region copy counts", "[phaseplane]") {
    GasModel iso(1.0);
    auto r1 = InvariantRegion::build(iso, std::sqrt(2.0), 0.0);
    CHECK(r1.copies() == 1);

    GasModel air(1.4);  // a(1.4) in (pi/2, pi]
    REQUIRE(a_of_gamma(1.4) > kPi / 2);
    REQUIRE(a_of_gamma(1.4) <= kPi);
    auto r2 = InvariantRegion::build(air, std::sqrt(2.0) * air.critical_speed(), 0.0);
    CHECK(r2.copies() == 2);

    GasModel g2(2.0);  // a(2) in (pi/4, pi/3]: covering and the paper agree on 4
    REQUIRE(a_of_gamma(2.0) > kPi / 4);
    REQUIRE(a_of_gamma(2.0) <= kPi / 3);
    auto r4 = InvariantRegion::build(g2, std::sqrt(2.0) * g2.critical_speed(), 0.0);
    CHECK(r4.copies() == 4);

    // covering condition is minimal and the cap stays below cavitation
    for (double g : {1.3, 1.5, 2.0, 2.5, 2.8}) {
        GasModel gas(g);
        auto r = InvariantRegion::build(gas, std::sqrt(2.0) * gas.critical_speed(), 0.0);
        CHECK(kPi / r.copies() < r.a_eff());
        if (r.copies() > 1) CHECK(kPi / (r.copies() - 1) >= r.a_eff());
        CHECK(r.q_star() < gas.cavitation_speed());
        CHECK(r.q_star() > r.q0());
    }

    CHECK_THROWS_AS(InvariantRegion::build(air, air.critical_speed(), 0.0),
                    std::domain_error);
}

TEST_CASE("containment queries", "[phaseplane]") {
    GasModel iso(1.0);
    auto region = InvariantRegion::build(iso, std::sqrt(2.0), 0.0);

    auto at_anchor = region.contains({std::sqrt(2.0), 1.7});
    CHECK(at_anchor.inside);
    CHECK(at_anchor.margin >= 0.0);

    // theta = pi with W gap pi - 0.1: inside
    double q_in = w_inverse(iso, w_profile(iso, std::sqrt(2.0)) + kPi - 0.1);
    CHECK(region.contains({q_in, kPi}).inside);

    // theta = 0.05 with W gap 0.2: outside
    double q_out = w_inverse(iso, w_profile(iso, std::sqrt(2.0)) + 0.2);
    CHECK_FALSE(region.contains({q_out, 0.05}).inside);

    // monotone in q: shrinking the speed never leaves the region
    GasModel air(1.4);
    auto r2 = InvariantRegion::build(air, std::sqrt(2.0) * air.critical_speed(), 0.0);
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        double q = r2.q_star() * (0.2 + 0.8 * unif(rng));
        double th = 2 * kPi * unif(rng);
        if (r2.contains({q, th}).inside) {
            for (double f : {0.7, 0.4, 0.1})
                CHECK(r2.contains({q * f, th}).inside);
        }
    }

    // boundary polyline lies on the cap and closes
    auto poly = region.boundary_polyline(64);
    REQUIRE(poly.size() == 65);
    CHECK(poly.front().q == Approx(poly.back().q).epsilon(1e-9));
    for (const auto& p : poly) {
        CHECK(p.q >= std::sqrt(2.0) * (1 - 1e-9));
        CHECK(region.contains({p.q * 0.999, p.theta}).inside);
    }
}

TEST_CASE("Prop 4.1 coefficient identity", "[phaseplane]") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (double g : {1.0, 1.2, 1.4, 2.0, 2.8}) {
        GasModel gas(g);
        double qj = std::sqrt(2.0) * gas.critical_speed();
        double qhi = gas.isothermal() ? 3.0 : qj + 0.7 * (gas.cavitation_speed() - qj);
        for (int i = 0; i < 25; ++i) {
            double q = qj * 1.03 + (qhi - qj * 1.03) * unif(rng);
            double rho = gas.density(q);
            double c = gas.sound_speed(q);

            // W_+ as a function of rho at fixed theta
            auto wp_of_rho = [&](double r) {
                return -w_profile(gas, gas.speed_from_density(r));
            };
            double h = 1e-4 * rho;
            double d1 = (wp_of_rho(rho + h) - wp_of_rho(rho - h)) / (2 * h);
            double d2 = (wp_of_rho(rho + h) - 2 * wp_of_rho(rho) + wp_of_rho(rho - h)) / (h * h);

            double lhs = d2 - gas.sigma2_prime_rho(q) * q * q / (q * q - c * c) * d1;
            double rhs = c * ((g - 3) * q * q + 4 * c * c) /
                         (2 * rho * rho * q * q * std::sqrt(q * q - c * c));
            CHECK(lhs == Approx(rhs).epsilon(1e-5));
        }
    }
}

TEST_CASE("sign condition (gamma-3)q^2 + 4c^2 < 0 iff q > sqrt(2) q_cr",
          "[phaseplane]") {
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (double g : {1.0, 1.2, 1.4, 2.0, 2.8}) {
        GasModel gas(g);
        double qj = std::sqrt(2.0) * gas.critical_speed();
        double qmax = gas.isothermal() ? 4.0 : 0.999 * gas.cavitation_speed();
        for (int i = 0; i < 400; ++i) {
            double q = qmax * unif(rng);
            double c = gas.sound_speed(q);
            bool neg = (g - 3) * q * q + 4 * c * c < 0.0;
            bool super2 = q > qj;
            if (std::fabs(q - qj) > 1e-9) CHECK(neg == super2);
        }
    }
}

TEST_CASE("phase state conversions round trip", "[phaseplane]") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        double q = 0.01 + 2.0 * unif(rng);
        double th = -kPi + 2 * kPi * unif(rng);
        PhaseState s{q, th};
        PhaseState back = PhaseState::from_uv(s.u(), s.v());
        CHECK(back.q == Approx(q).epsilon(1e-12));
        CHECK(std::remainder(back.theta - th, 2 * kPi) == Approx(0.0).margin(1e-12));
    }
}
