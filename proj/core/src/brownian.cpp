#include "nevlab/brownian.hpp"
#include "nevlab/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace nevlab {

void PathRng::next_gaussian_pair(double& g1, double& g2) {
    const double u1 = 1.0 - next_uniform(); // (0, 1]
    const double u2 = next_uniform();
    const double rad = std::sqrt(-2.0 * std::log(u1));
    g1 = rad * std::cos(kTwoPi * u2);
    g2 = rad * std::sin(kTwoPi * u2);
}

void BmConfig::validate() const {
    if (!surface) throw ConfigError("brownian config needs a surface");
    if (n_paths < 0) throw ConfigError("n_paths must be nonnegative");
    if (!(step > 0.0)) throw ConfigError("step must be positive");
    if (!(r_exit > 0.0) || !(r_exit < surface->s_radius()))
        throw ConfigError("exit radius must lie inside the surface");
    // RMS Euclidean displacement per step is sqrt(2 step / lambda); the
    // worst case over the disc uses the smallest weight.
    const double norm_sup = form_norm_extrema(*surface, r_exit).second;
    const double lambda_min = 1.0 / (norm_sup * norm_sup);
    const double rms = std::sqrt(2.0 * step / lambda_min);
    if (rms >= r_exit / 100.0)
        throw ConfigError("step too large: per-step RMS displacement exceeds r_exit/100");
}

namespace {

struct PathResult {
    double angle = 0.0;
    double exit_value = 0.0;
    bool truncated = false;
    std::vector<float> occupation; // per-bin dV-weighted time
};

PathResult run_path(const BmConfig& cfg, uint64_t index,
                    const std::function<double(Complex)>& functional,
                    int occupation_bins) {
    PathRng rng(cfg.seed, index);
    PathResult out;
    out.occupation.assign(occupation_bins, 0.0f);
    const double bin_w = cfg.r_exit / occupation_bins;
    Complex w{0.0, 0.0};
    for (long s = 0; s < cfg.max_steps; ++s) {
        const double lam = cfg.surface->lambda(w);
        const double dt_e = cfg.step / lam;
        // dV-weighted occupation: lambda * euclidean time = metric step
        const int bin = std::min(occupation_bins - 1,
                                 static_cast<int>(std::abs(w) / bin_w));
        out.occupation[bin] += static_cast<float>(lam * dt_e);
        double g1, g2;
        rng.next_gaussian_pair(g1, g2);
        const double sd = std::sqrt(dt_e);
        const Complex next = w + Complex(sd * g1, sd * g2);
        if (std::abs(next) >= cfg.r_exit) {
            // linear interpolation of the crossing point on the last step
            const Complex d = next - w;
            const double a = std::norm(d);
            const double b = 2.0 * (w.real() * d.real() + w.imag() * d.imag());
            const double c = std::norm(w) - cfg.r_exit * cfg.r_exit;
            const double disc = std::max(0.0, b * b - 4.0 * a * c);
            const double s_hit = a > 0.0 ? (-b + std::sqrt(disc)) / (2.0 * a) : 0.0;
            const Complex hit = w + std::clamp(s_hit, 0.0, 1.0) * d;
            out.angle = std::arg(hit);
            if (functional) {
                const Complex on_circle =
                    cfg.r_exit * Complex(std::cos(out.angle), std::sin(out.angle));
                out.exit_value = functional(on_circle);
            }
            return out;
        }
        w = next;
    }
    out.truncated = true;
    out.angle = std::arg(w == Complex{0.0, 0.0} ? Complex{1.0, 0.0} : w);
    if (functional) out.exit_value = functional(w);
    return out;
}

} // namespace

ExitSamples sample_exits(const BmConfig& cfg,
                         const std::function<double(Complex)>& functional,
                         int occupation_bins) {
    cfg.validate();
    ExitSamples out;
    out.occupation.assign(occupation_bins, 0.0);
    out.occupation_bin_width = cfg.r_exit / occupation_bins;
    if (cfg.n_paths == 0) return out;

    std::vector<PathResult> results(cfg.n_paths);
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned workers = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads) : hw;
    if (workers <= 1) {
        for (long i = 0; i < cfg.n_paths; ++i)
            results[i] = run_path(cfg, static_cast<uint64_t>(i), functional, occupation_bins);
    } else {
        std::atomic<long> next{0};
        auto worker = [&]() {
            for (;;) {
                const long i = next.fetch_add(1);
                if (i >= cfg.n_paths) return;
                results[i] =
                    run_path(cfg, static_cast<uint64_t>(i), functional, occupation_bins);
            }
        };
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    // merge in path order so tallies are independent of scheduling
    out.angles.reserve(cfg.n_paths);
    for (const PathResult& p : results) {
        out.angles.push_back(p.angle);
        if (functional) out.exit_values.push_back(p.exit_value);
        if (p.truncated) ++out.truncated_paths;
        for (int b = 0; b < occupation_bins; ++b)
            out.occupation[b] += static_cast<double>(p.occupation[b]);
    }
    return out;
}

double ks_uniformity_statistic(std::vector<double> angles) {
    if (angles.empty()) return 0.0;
    for (double& a : angles) {
        a = std::fmod(a, kTwoPi);
        if (a < 0) a += kTwoPi;
        a /= kTwoPi;
    }
    std::sort(angles.begin(), angles.end());
    const double n = static_cast<double>(angles.size());
    double d = 0.0;
    for (size_t i = 0; i < angles.size(); ++i) {
        d = std::max(d, (i + 1) / n - angles[i]);
        d = std::max(d, angles[i] - i / n);
    }
    return d;
}

double chi_square_uniform(const std::vector<double>& angles, int bins) {
    if (angles.empty() || bins <= 0) return 0.0;
    std::vector<long> counts(bins, 0);
    for (double a : angles) {
        double u = std::fmod(a, kTwoPi);
        if (u < 0) u += kTwoPi;
        ++counts[std::min(bins - 1, static_cast<int>(u / kTwoPi * bins))];
    }
    const double expect = static_cast<double>(angles.size()) / bins;
    double chi2 = 0.0;
    for (long c : counts) {
        const double d = c - expect;
        chi2 += d * d / expect;
    }
    return chi2;
}

DynkinComparison dynkin_check(const std::function<double(Complex)>& u,
                              const std::function<double(Complex)>& lap_u,
                              const BmConfig& cfg, double abs_tol) {
    cfg.validate();
    const double r = cfg.r_exit;
    DynkinComparison out;

    const double u0 = u(Complex{0.0, 0.0});
    auto boundary = [&](double th) { return u(r * Complex(std::cos(th), std::sin(th))); };
    out.lhs_analytic = harmonic_measure_average(boundary, r, abs_tol) - u0;

    // (1/2) g (Delta u) dV with the metric Laplacian (Euclidean Laplacian
    // over twice the weight) against dV = 2 lambda dA; the weight cancels.
    auto integrand = [&](const Complex& w) {
        const double lam = cfg.surface->lambda(w);
        const double metric_lap = lap_u(w) / (2.0 * lam);
        return 0.5 * metric_lap * (2.0 * lam);
    };
    out.rhs_analytic = disc_integral_log_weight(integrand, r, abs_tol).value / kPi;

    const ExitSamples samples = sample_exits(cfg, u);
    out.paths = static_cast<long>(samples.exit_values.size());
    out.truncated = samples.truncated_paths;
    if (out.paths > 0) {
        double mean = 0.0;
        for (double v : samples.exit_values) mean += v;
        mean /= static_cast<double>(out.paths);
        double var = 0.0;
        for (double v : samples.exit_values) var += (v - mean) * (v - mean);
        var /= std::max<long>(1, out.paths - 1);
        out.mc_estimate = mean - u0;
        out.mc_std_error = std::sqrt(var / static_cast<double>(out.paths));
    }
    out.lhs_vs_rhs = std::abs(out.lhs_analytic - out.rhs_analytic);
    // floor keeps the ratio meaningful when u is constant on the circle
    out.mc_vs_lhs_sigmas = std::abs(out.mc_estimate - out.lhs_analytic) /
                           std::max(out.mc_std_error, 1e-9);
    return out;
}

} // namespace nevlab
