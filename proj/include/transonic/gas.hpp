#pragma once

#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "transonic/errors.hpp"
#include "transonic/numerics.hpp"

namespace transonic {

// Tunables of the gas model beyond gamma. Defaults follow the library's
// standard choices; they rarely need to change.
struct GasOptions {
    // sigma2 continuation below q = sqrt(2) q_cr: value at q = 0.
    // Negative means the default (gamma+1)/8.
    double sigma2_floor = -1.0;
    // Density at which mu is normalized to zero. Negative means rho(q_cr).
    double mu_anchor_rho = -1.0;
    // Stagnation-side cutoff for mu as a fraction of q_cr.
    double q_min_mu_factor = 1e-3;
    // Lower end of the tabulated density range.
    double rho_table_min = 1e-8;
    // Nodes per table.
    std::size_t table_points = 2048;
};

// Pointwise thermodynamics of a polytropic (gamma > 1) or isothermal
// (gamma = 1) gas in the paper-normalized units rho(0) = 1, plus the
// sigma(rho) and mu(rho) changes of variable and their inverses.
//
// Immutable after construction; all members are pure. Copies share state.
class GasModel {
public:
    explicit GasModel(double gamma, GasOptions opts = {})
        : impl_(std::make_shared<Impl>(gamma, opts)) {}

    double gamma() const { return impl_->gamma; }
    bool isothermal() const { return impl_->isothermal; }

    // q_cr = sqrt(2/(gamma+1)); q at which q = c.
    double critical_speed() const { return impl_->qcr; }
    // q_cav = sqrt(2/(gamma-1)) for gamma > 1, +inf for gamma = 1.
    double cavitation_speed() const { return impl_->qcav; }

    // Bernoulli's law rho(q); strictly decreasing, rho(0) = 1.
    double density(double q) const {
        check_speed(q);
        if (impl_->isothermal) return std::exp(-0.5 * q * q);
        double arg = 1.0 - 0.5 * (impl_->gamma - 1.0) * q * q;
        if (arg < 0.0) arg = 0.0;
        return std::pow(arg, 1.0 / (impl_->gamma - 1.0));
    }

    double sound_speed(double q) const {
        check_speed(q);
        if (impl_->isothermal) return 1.0;
        double arg = 1.0 - 0.5 * (impl_->gamma - 1.0) * q * q;
        if (arg < 0.0) arg = 0.0;
        return std::sqrt(arg);
    }

    double sound_speed_sq(double q) const {
        check_speed(q);
        if (impl_->isothermal) return 1.0;
        return std::max(0.0, 1.0 - 0.5 * (impl_->gamma - 1.0) * q * q);
    }

    double mach(double q) const { return q / sound_speed(q); }

    // drho/dq = -rho q / c^2.
    double drho_dq(double q) const {
        return -density(q) * q / sound_speed_sq(q);
    }

    // Exact inverse of density on rho in (0, 1].
    double speed_from_density(double rho) const {
        if (!(rho > 0.0) || rho > 1.0 + 1e-14)
            throw std::domain_error("speed_from_density: rho outside (0, 1]");
        rho = std::min(rho, 1.0);
        if (impl_->isothermal) return std::sqrt(-2.0 * std::log(rho));
        double g = impl_->gamma;
        double arg = 2.0 * (1.0 - std::pow(rho, g - 1.0)) / (g - 1.0);
        return std::sqrt(std::max(0.0, arg));
    }

    // Artificial viscosity coefficient: (q^2 - c^2)/q^2 for q >= sqrt(2) q_cr,
    // cubic Hermite continuation in q^2 below the junction; C^1 and positive.
    double sigma2(double q) const {
        check_speed(q);
        double s = q * q;
        if (s >= impl_->s_junction)
            return 0.5 * (impl_->gamma + 1.0) - 1.0 / s;
        return impl_->hermite(s);
    }

    // d sigma2 / d rho via the chain rule (both branches).
    double sigma2_prime_rho(double q) const {
        check_speed(q);
        double s = q * q;
        double dsigma_ds = (s >= impl_->s_junction) ? 1.0 / (s * s)
                                                    : impl_->hermite_prime(s);
        // ds/drho = 2 q dq/drho = -2 c^2 / rho
        return dsigma_ds * (-2.0 * sound_speed_sq(q) / density(q));
    }

    // sigma(rho) = integral_1^rho sigma2; sigma(1) = 0, strictly increasing.
    double sigma_of_rho(double rho) const {
        const auto& tab = impl_->sigma_table();
        if (!(rho > 0.0) || rho > 1.0 + 1e-14)
            throw std::domain_error("sigma_of_rho: rho outside (0, 1]");
        rho = std::min(rho, 1.0);
        if (rho < impl_->opts.rho_table_min * (1.0 - 1e-12))
            throw std::domain_error("sigma_of_rho: rho below tabulated range");
        return impl_->sigma_at(tab, rho);
    }

    double rho_of_sigma(double sigma) const {
        const auto& tab = impl_->sigma_table();
        double lo = tab.value.front(), hi = tab.value.back();  // [sigma_min, 0]
        if (sigma < lo - 1e-12 || sigma > hi + 1e-12)
            throw std::domain_error("rho_of_sigma: sigma outside attained range");
        sigma = std::clamp(sigma, lo, hi);
        double rho = std::clamp(tab.inverse(sigma), impl_->opts.rho_table_min, 1.0);
        // Newton on the quadrature-accurate forward map; sigma' = sigma2 > 0.
        for (int it = 0; it < 30; ++it) {
            double f = impl_->sigma_at(tab, rho) - sigma;
            double step = f / sigma2(speed_from_density(rho));
            double next = std::clamp(rho - step, impl_->opts.rho_table_min, 1.0);
            double delta = std::fabs(next - rho);
            rho = next;
            if (delta <= 1e-14 * std::max(rho, 1e-3)) break;
        }
        return rho;
    }

    double sigma_min() const { return impl_->sigma_table().value.front(); }

    // mu'(rho) = c^2/q^2.
    double mu_prime_rho(double rho) const {
        double q = speed_from_density(rho);
        if (q <= 0.0) throw std::domain_error("mu_prime_rho: stagnation");
        return sound_speed_sq(q) / (q * q);
    }

    double mu_anchor_rho() const { return impl_->mu_anchor_rho; }
    double q_min_mu() const { return impl_->q_min_mu; }

    // mu(rho) with mu(mu_anchor_rho) = 0; strictly increasing in rho.
    double mu_of_rho(double rho) const {
        return mu_of_speed(speed_from_density(rho));
    }

    // Same map parametrized by q (mu is strictly decreasing in q).
    double mu_of_speed(double q) const {
        const auto& tab = impl_->mu_table();
        if (q < impl_->q_min_mu * (1.0 - 1e-12))
            throw std::domain_error("mu: speed below stagnation-side cutoff");
        double t = std::log(q);
        if (t > tab.t.back() + 1e-12)
            throw std::domain_error("mu: speed beyond tabulated range");
        return impl_->mu_at(tab, std::min(t, tab.t.back()));
    }

    double q_of_mu(double mu) const {
        const auto& tab = impl_->mu_table();
        double lo = tab.value.back(), hi = tab.value.front();  // mu decreasing in t
        if (mu < lo - 1e-12 || mu > hi + 1e-12)
            throw std::domain_error("q_of_mu: mu outside tabulated range");
        mu = std::clamp(mu, lo, hi);
        double t = std::clamp(tab.inverse(mu), tab.t.front(), tab.t.back());
        for (int it = 0; it < 30; ++it) {
            double f = impl_->mu_at(tab, t) - mu;
            // d mu/dt = -rho(e^t)
            double step = f / (-density(std::exp(t)));
            double next = std::clamp(t - step, tab.t.front(), tab.t.back());
            double delta = std::fabs(next - t);
            t = next;
            if (delta <= 1e-15 * std::max(1.0, std::fabs(t))) break;
        }
        return std::exp(t);
    }

    double rho_of_mu(double mu) const { return density(q_of_mu(mu)); }

    double mu_min() const { return impl_->mu_table().value.back(); }
    double mu_max() const { return impl_->mu_table().value.front(); }

private:
    struct Table {
        std::vector<double> x;      // abscissa nodes (rho, ascending)
        std::vector<double> t;      // abscissa nodes (ln q, ascending)
        std::vector<double> value;  // prefix integrals at nodes
        num::MonotoneCubic inverse; // value -> abscissa seed
    };

    struct Impl {
        double gamma;
        bool isothermal;
        double qcr, qcav;
        double s_junction;  // (sqrt(2) q_cr)^2 = 4/(gamma+1)
        double hermite_v0, hermite_v1, hermite_m1;
        double mu_anchor_rho, q_min_mu;
        GasOptions opts;

        mutable std::once_flag sigma_once, mu_once;
        mutable std::unique_ptr<Table> sigma_tab, mu_tab;

        Impl(double g, GasOptions o) : gamma(g), opts(o) {
            if (!(g >= 1.0) || !(g < 3.0))
                throw construction_error("GasModel: gamma must lie in [1, 3)");
            isothermal = (g == 1.0);
            qcr = std::sqrt(2.0 / (g + 1.0));
            qcav = isothermal ? std::numeric_limits<double>::infinity()
                              : std::sqrt(2.0 / (g - 1.0));
            s_junction = 4.0 / (g + 1.0);
            hermite_v0 = opts.sigma2_floor > 0 ? opts.sigma2_floor : (g + 1.0) / 8.0;
            hermite_v1 = (g + 1.0) / 4.0;
            hermite_m1 = 1.0 / (s_junction * s_junction);
            if (opts.mu_anchor_rho > 0) {
                mu_anchor_rho = opts.mu_anchor_rho;
            } else if (isothermal) {
                mu_anchor_rho = std::exp(-0.5 * qcr * qcr);
            } else {
                mu_anchor_rho = std::pow(1.0 - 0.5 * (g - 1.0) * qcr * qcr,
                                         1.0 / (g - 1.0));
            }
            q_min_mu = opts.q_min_mu_factor * qcr;
        }

        // Cubic Hermite in s = q^2 on [0, s_junction]: value hermite_v0 and
        // zero slope at s = 0, value hermite_v1 and slope hermite_m1 at the
        // junction. Fritsch-Carlson parameters lie in the monotone region.
        double hermite(double s) const {
            double u = s / s_junction;
            double h00 = (1 + 2 * u) * (1 - u) * (1 - u);
            double h01 = u * u * (3 - 2 * u);
            double h11 = u * u * (u - 1);
            return hermite_v0 * h00 + hermite_v1 * h01 +
                   s_junction * hermite_m1 * h11;
        }
        double hermite_prime(double s) const {
            double u = s / s_junction;
            double dh00 = 6 * u * (u - 1);
            double dh01 = -dh00;
            double dh11 = u * (3 * u - 2);
            return (hermite_v0 * dh00 + hermite_v1 * dh01) / s_junction +
                   hermite_m1 * dh11;
        }

        double sigma2_of_rho(double rho) const {
            double q = speed_from_density_raw(rho);
            double s = q * q;
            if (s >= s_junction) return 0.5 * (gamma + 1.0) - 1.0 / s;
            return hermite(s);
        }

        double speed_from_density_raw(double rho) const {
            if (isothermal) return std::sqrt(-2.0 * std::log(std::min(rho, 1.0)));
            double arg =
                2.0 * (1.0 - std::pow(std::min(rho, 1.0), gamma - 1.0)) / (gamma - 1.0);
            return std::sqrt(std::max(0.0, arg));
        }

        double density_of_t(double t) const {
            double q = std::exp(t);
            if (isothermal) return std::exp(-0.5 * q * q);
            double arg = 1.0 - 0.5 * (gamma - 1.0) * q * q;
            return std::pow(std::max(arg, 0.0), 1.0 / (gamma - 1.0));
        }

        const Table& sigma_table() const {
            std::call_once(sigma_once, [this] {
                auto tab = std::make_unique<Table>();
                tab->x = num::logspace(opts.rho_table_min, 1.0, opts.table_points);
                tab->value.resize(tab->x.size());
                tab->value[0] = 0.0;
                auto f = [this](double r) { return sigma2_of_rho(r); };
                for (std::size_t i = 1; i < tab->x.size(); ++i)
                    tab->value[i] = tab->value[i - 1] +
                                    num::integrate(f, tab->x[i - 1], tab->x[i], 1e-12);
                double offset = tab->value.back();
                for (double& v : tab->value) v -= offset;  // sigma(1) = 0 exactly
                tab->inverse = num::MonotoneCubic(tab->value, tab->x);
                sigma_tab = std::move(tab);
            });
            return *sigma_tab;
        }

        double sigma_at(const Table& tab, double rho) const {
            double lmin = std::log(opts.rho_table_min);
            double dl = -lmin / static_cast<double>(tab.x.size() - 1);
            double u = (std::log(rho) - lmin) / dl;
            auto k = static_cast<std::size_t>(
                std::clamp(std::llround(u), 0LL,
                           static_cast<long long>(tab.x.size() - 1)));
            auto f = [this](double r) { return sigma2_of_rho(r); };
            return tab.value[k] + num::integrate(f, tab.x[k], rho, 1e-13);
        }

        const Table& mu_table() const {
            std::call_once(mu_once, [this] {
                auto tab = std::make_unique<Table>();
                double t_lo = std::log(q_min_mu);
                double t_hi = std::log(speed_from_density_raw(opts.rho_table_min));
                tab->t = num::linspace(t_lo, t_hi, opts.table_points);
                tab->value.resize(tab->t.size());
                tab->value[0] = 0.0;
                auto f = [this](double t) { return -density_of_t(t); };
                for (std::size_t i = 1; i < tab->t.size(); ++i)
                    tab->value[i] = tab->value[i - 1] +
                                    num::integrate(f, tab->t[i - 1], tab->t[i], 1e-12);
                // Shift so that mu vanishes at the anchor density.
                double t_anchor = std::log(speed_from_density_raw(mu_anchor_rho));
                double anchor = prefix_at(*tab, t_anchor);
                for (double& v : tab->value) v -= anchor;
                // mu decreases in t; reverse for an ascending inverse seed.
                std::vector<double> mu_rev(tab->value.rbegin(), tab->value.rend());
                std::vector<double> t_rev(tab->t.rbegin(), tab->t.rend());
                tab->inverse = num::MonotoneCubic(std::move(mu_rev), std::move(t_rev));
                mu_tab = std::move(tab);
            });
            return *mu_tab;
        }

        double prefix_at(const Table& tab, double t) const {
            double dt = (tab.t.back() - tab.t.front()) /
                        static_cast<double>(tab.t.size() - 1);
            double u = (t - tab.t.front()) / dt;
            auto k = static_cast<std::size_t>(
                std::clamp(std::llround(u), 0LL,
                           static_cast<long long>(tab.t.size() - 1)));
            auto f = [this](double s) { return -density_of_t(s); };
            return tab.value[k] + num::integrate(f, tab.t[k], t, 1e-13);
        }

        double mu_at(const Table& tab, double t) const { return prefix_at(tab, t); }
    };

    void check_speed(double q) const {
        if (!(q >= 0.0) || q > impl_->qcav * (1.0 + 1e-12))
            throw std::domain_error("speed outside [0, q_cav]");
    }

    std::shared_ptr<const Impl> impl_;
};

}  // namespace transonic
