#include "ontolab/bohm.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace ontolab {

namespace {

constexpr double kNormTol = 1e-8;
constexpr double kNodeDensity = 1e-14;

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

double uniform01(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

std::vector<double> wavenumbers(const Grid1D& g) {
    const std::size_t n = g.n_points;
    const double dk = 2.0 * std::numbers::pi / (static_cast<double>(n) * g.dx);
    std::vector<double> k(n);
    for (std::size_t j = 0; j < n; ++j) {
        const auto jj = static_cast<double>(j < n / 2 ? j : j - n);
        k[j] = dk * jj;
    }
    return k;
}

// One Strang step: exp(-iV dt/2) ifft exp(-i k^2/2 dt) fft exp(-iV dt/2).
void strang_step(Eigen::VectorXcd& amp, const Eigen::VectorXcd& kinetic_phase,
                 const Eigen::VectorXcd& half_potential_phase, Eigen::FFT<double>& fft,
                 Eigen::VectorXcd& freq) {
    amp = amp.cwiseProduct(half_potential_phase);
    fft.fwd(freq, amp);
    freq = freq.cwiseProduct(kinetic_phase);
    fft.inv(amp, freq);
    amp = amp.cwiseProduct(half_potential_phase);
}

// Precomputed guidance field: numerator Im(psi* dpsi) and density on the
// grid, evaluated by linear interpolation.
struct GuidanceField {
    const Grid1D* grid = nullptr;
    Eigen::VectorXd num;
    Eigen::VectorXd den;

    void build(const Grid1D& g, const Eigen::VectorXcd& amp, Eigen::FFT<double>& fft,
               const std::vector<double>& k, Eigen::VectorXcd& freq,
               Eigen::VectorXcd& deriv) {
        grid = &g;
        fft.fwd(freq, amp);
        for (std::size_t j = 0; j < g.n_points; ++j) freq[j] *= std::complex<double>(0.0, k[j]);
        fft.inv(deriv, freq);
        num.resize(amp.size());
        den.resize(amp.size());
        for (Eigen::Index i = 0; i < amp.size(); ++i) {
            num[i] = std::imag(std::conj(amp[i]) * deriv[i]);
            den[i] = std::norm(amp[i]);
        }
    }

    double velocity(double x, double cap, std::size_t& warnings) const {
        const auto n = static_cast<std::size_t>(num.size());
        double u = (x - grid->x_min) / grid->dx;
        u = std::clamp(u, 0.0, static_cast<double>(n - 1));
        const auto i0 = std::min(static_cast<std::size_t>(u), n - 2);
        const double f = u - static_cast<double>(i0);
        const double nm = num[i0] * (1.0 - f) + num[i0 + 1] * f;
        double dn = den[i0] * (1.0 - f) + den[i0 + 1] * f;
        bool node = false;
        if (dn < kNodeDensity) {
            dn = kNodeDensity;
            node = true;
        }
        double v = nm / dn;
        if (v > cap || v < -cap) {
            v = std::clamp(v, -cap, cap);
            node = true;
        }
        if (node) ++warnings;
        return v;
    }
};

void apply_blocker_mask(WaveField& w, const BlockerConfig& b) {
    for (std::size_t i = 0; i < w.grid.n_points; ++i) {
        const double x = w.grid.x(i);
        if (x >= b.x_lo && x <= b.x_hi) w.amp[static_cast<Eigen::Index>(i)] = 0.0;
    }
    const double nrm = std::sqrt(w.norm_l2());
    if (nrm < 1e-12)
        throw std::runtime_error("blocker mask removed the whole wave");
    w.amp /= nrm;
}

std::vector<double> cumulative_mass(const WaveField& w) {
    // F[i] = mass strictly left of grid point i, F[n] = total
    const std::size_t n = w.grid.n_points;
    std::vector<double> cdf(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        cdf[i + 1] = cdf[i] + std::norm(w.amp[static_cast<Eigen::Index>(i)]) * w.grid.dx;
    return cdf;
}

}  // namespace

Grid1D Grid1D::make(double x_min, double x_max, std::size_t n_points) {
    if (!(x_max > x_min)) throw std::invalid_argument("Grid1D: x_max must exceed x_min");
    if (!is_power_of_two(n_points) || n_points < 256)
        throw std::invalid_argument("Grid1D: n_points must be a power of two >= 256");
    Grid1D g;
    g.x_min = x_min;
    g.x_max = x_max;
    g.n_points = n_points;
    g.dx = (x_max - x_min) / static_cast<double>(n_points - 1);
    return g;
}

double WaveField::norm_l2() const {
    double s = 0.0;
    for (Eigen::Index i = 0; i < amp.size(); ++i) s += std::norm(amp[i]);
    return s * grid.dx;
}

void validate_wave(const WaveField& w) {
    if (static_cast<std::size_t>(w.amp.size()) != w.grid.n_points)
        throw std::invalid_argument("WaveField: amplitude count != grid points");
    if (std::abs(w.norm_l2() - 1.0) > kNormTol)
        throw std::invalid_argument("WaveField: norm differs from 1 beyond 1e-8");
}

WaveField gaussian_packet(const Grid1D& grid, double center, double sigma, double momentum) {
    if (sigma <= 0.0) throw std::invalid_argument("gaussian_packet: sigma must be positive");
    WaveField w;
    w.grid = grid;
    w.amp.resize(static_cast<Eigen::Index>(grid.n_points));
    for (std::size_t i = 0; i < grid.n_points; ++i) {
        const double x = grid.x(i);
        const double envelope = std::exp(-(x - center) * (x - center) / (4.0 * sigma * sigma));
        w.amp[static_cast<Eigen::Index>(i)] =
            envelope * std::exp(std::complex<double>(0.0, momentum * x));
    }
    w.amp /= std::sqrt(w.norm_l2());
    return w;
}

WaveField superpose(const WaveField& a, const WaveField& b, std::complex<double> ca,
                    std::complex<double> cb) {
    if (a.grid.n_points != b.grid.n_points || a.grid.x_min != b.grid.x_min ||
        a.grid.dx != b.grid.dx)
        throw std::invalid_argument("superpose: grids differ");
    WaveField w;
    w.grid = a.grid;
    w.time = a.time;
    w.amp = ca * a.amp + cb * b.amp;
    const double nrm = std::sqrt(w.norm_l2());
    if (nrm < 1e-12) throw std::invalid_argument("superpose: combination vanishes");
    w.amp /= nrm;
    return w;
}

double window_mass(const WaveField& w, double x_lo, double x_hi) {
    double s = 0.0;
    for (std::size_t i = 0; i < w.grid.n_points; ++i) {
        const double x = w.grid.x(i);
        if (x >= x_lo && x <= x_hi) s += std::norm(w.amp[static_cast<Eigen::Index>(i)]);
    }
    return s * w.grid.dx;
}

double cross_mass(const WaveField& a, const WaveField& b) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < a.amp.size(); ++i) s += std::abs(a.amp[i]) * std::abs(b.amp[i]);
    return s * a.grid.dx;
}

double grid_overlap_mass(const WaveField& a, const WaveField& b) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < a.amp.size(); ++i)
        s += std::min(std::norm(a.amp[i]), std::norm(b.amp[i]));
    return s * a.grid.dx;
}

double position_mean(const WaveField& w) {
    double s = 0.0;
    for (std::size_t i = 0; i < w.grid.n_points; ++i)
        s += w.grid.x(i) * std::norm(w.amp[static_cast<Eigen::Index>(i)]);
    return s * w.grid.dx;
}

double position_variance(const WaveField& w) {
    const double m = position_mean(w);
    double s = 0.0;
    for (std::size_t i = 0; i < w.grid.n_points; ++i) {
        const double d = w.grid.x(i) - m;
        s += d * d * std::norm(w.amp[static_cast<Eigen::Index>(i)]);
    }
    return s * w.grid.dx;
}

WaveField evolve(const WaveField& psi, const std::vector<double>& potential, double dt,
                 int steps) {
    validate_wave(psi);
    if (steps < 0) throw std::invalid_argument("evolve: negative step count");
    if (potential.size() != psi.grid.n_points)
        throw std::invalid_argument("evolve: potential size != grid points");
    WaveField w = psi;
    if (steps == 0) return w;

    const std::size_t n = w.grid.n_points;
    const auto k = wavenumbers(w.grid);
    Eigen::VectorXcd kinetic(n), halfpot(n);
    for (std::size_t j = 0; j < n; ++j) {
        kinetic[j] = std::exp(std::complex<double>(0.0, -0.5 * k[j] * k[j] * dt));
        halfpot[j] = std::exp(std::complex<double>(0.0, -0.5 * potential[j] * dt));
    }
    Eigen::FFT<double> fft;
    Eigen::VectorXcd freq(n);
    for (int s = 0; s < steps; ++s) strang_step(w.amp, kinetic, halfpot, fft, freq);
    w.time = psi.time + dt * steps;

    const double drift = std::abs(w.norm_l2() - 1.0);
    if (drift > kNormTol)
        throw std::runtime_error("evolve: norm drifted by " + std::to_string(drift) +
                                 " (> 1e-8) after " + std::to_string(steps) + " steps");
    return w;
}

double guidance_velocity(const WaveField& psi, double x, std::size_t* warn_counter) {
    validate_wave(psi);
    Eigen::FFT<double> fft;
    Eigen::VectorXcd freq(psi.amp.size()), deriv(psi.amp.size());
    GuidanceField gf;
    gf.build(psi.grid, psi.amp, fft, wavenumbers(psi.grid), freq, deriv);
    std::size_t warnings = 0;
    const double v =
        gf.velocity(x, std::numeric_limits<double>::infinity(), warnings);
    if (warn_counter) *warn_counter += warnings;
    return v;
}

std::vector<double> sample_positions(const WaveField& psi, std::size_t n, std::uint64_t seed) {
    validate_wave(psi);
    const auto cdf = cumulative_mass(psi);
    const double total = cdf.back();
    std::mt19937_64 eng(seed);
    std::vector<double> out(n);
    for (std::size_t s = 0; s < n; ++s) {
        const double u = uniform01(eng) * total;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        std::size_t cell = it == cdf.begin()
                               ? 0
                               : static_cast<std::size_t>(std::distance(cdf.begin(), it)) - 1;
        cell = std::min(cell, psi.grid.n_points - 1);
        const double seg = cdf[cell + 1] - cdf[cell];
        const double frac = seg > 0.0 ? (u - cdf[cell]) / seg : 0.5;
        out[s] = psi.grid.x(cell) + frac * psi.grid.dx;
    }
    return out;
}

double ks_statistic(std::vector<double> samples, const WaveField& reference) {
    if (samples.empty()) throw std::invalid_argument("ks_statistic: no samples");
    const auto cdf = cumulative_mass(reference);
    const double total = cdf.back();
    std::sort(samples.begin(), samples.end());
    const auto n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t s = 0; s < samples.size(); ++s) {
        // reference CDF at the sample point, linear between grid nodes
        double u = (samples[s] - reference.grid.x_min) / reference.grid.dx;
        u = std::clamp(u, 0.0, static_cast<double>(reference.grid.n_points - 1));
        const auto i0 = static_cast<std::size_t>(u);
        const double f = u - static_cast<double>(i0);
        const double fx = (cdf[i0] * (1.0 - f) + cdf[std::min(i0 + 1, reference.grid.n_points)] * f) / total;
        d = std::max(d, std::abs(fx - static_cast<double>(s) / n));
        d = std::max(d, std::abs(static_cast<double>(s + 1) / n - fx));
    }
    return d;
}

std::vector<double> TrajectoryEnsemble::surviving_final_positions() const {
    std::vector<double> out;
    const auto& fin = final_positions();
    for (std::size_t t = 0; t < fin.size(); ++t)
        if (!absorbed[t]) out.push_back(fin[t]);
    return out;
}

EnsembleRun run_ensemble(const WaveField& psi0, const BlockerConfig& blocker,
                         std::size_t n_traj, double dt, double t_final, std::uint64_t seed,
                         std::size_t save_every) {
    validate_wave(psi0);
    if (n_traj == 0) throw std::invalid_argument("run_ensemble: no trajectories");
    if (dt <= 0.0 || t_final <= 0.0)
        throw std::invalid_argument("run_ensemble: dt and t_final must be positive");
    if (blocker.enabled) {
        if (blocker.x_lo >= blocker.x_hi || blocker.x_lo < psi0.grid.x_min ||
            blocker.x_hi > psi0.grid.x_max)
            throw std::invalid_argument("run_ensemble: blocker region outside the grid");
        if (blocker.t_activate < 0.0)
            throw std::invalid_argument("run_ensemble: blocker activation time negative");
    }

    const auto steps = static_cast<std::size_t>(std::llround(t_final / dt));
    if (steps == 0) throw std::invalid_argument("run_ensemble: t_final shorter than dt");

    EnsembleRun run;
    TrajectoryEnsemble& ens = run.ensemble;
    ens.seed = seed;
    ens.initial_positions = sample_positions(psi0, n_traj, seed);
    ens.absorbed.assign(n_traj, 0);

    const std::size_t n = psi0.grid.n_points;
    const auto k = wavenumbers(psi0.grid);
    const double half_dt = 0.5 * dt;
    Eigen::VectorXcd kinetic(n);
    Eigen::VectorXcd no_potential = Eigen::VectorXcd::Ones(static_cast<Eigen::Index>(n));
    for (std::size_t j = 0; j < n; ++j)
        kinetic[j] = std::exp(std::complex<double>(0.0, -0.5 * k[j] * k[j] * half_dt));
    Eigen::FFT<double> fft;
    Eigen::VectorXcd freq(n), deriv(n);

    WaveField w = psi0;
    bool blocker_pending = blocker.enabled;
    const double cap = psi0.grid.dx / dt;

    auto maybe_block = [&](double now) {
        if (!blocker_pending || now + 1e-12 < blocker.t_activate) return;
        blocker_pending = false;
        apply_blocker_mask(w, blocker);
        auto& positions = ens.paths.back();
        for (std::size_t t = 0; t < n_traj; ++t) {
            if (!ens.absorbed[t] && positions[t] >= blocker.x_lo && positions[t] <= blocker.x_hi) {
                ens.absorbed[t] = 1;
                ++run.n_absorbed;
            }
        }
    };

    std::vector<double> x = ens.initial_positions;
    ens.times.push_back(psi0.time);
    ens.paths.push_back(x);
    maybe_block(psi0.time);

    GuidanceField g0, gh, g1;
    g0.build(w.grid, w.amp, fft, k, freq, deriv);

    for (std::size_t s = 0; s < steps; ++s) {
        const double t_now = psi0.time + dt * static_cast<double>(s);

        // wave at t + dt/2 and t + dt (free propagation between mask events)
        Eigen::VectorXcd amp_half = w.amp;
        strang_step(amp_half, kinetic, no_potential, fft, freq);
        Eigen::VectorXcd amp_full = amp_half;
        strang_step(amp_full, kinetic, no_potential, fft, freq);

        gh.build(w.grid, amp_half, fft, k, freq, deriv);
        g1.build(w.grid, amp_full, fft, k, freq, deriv);

        for (std::size_t t = 0; t < n_traj; ++t) {
            if (ens.absorbed[t]) continue;
            const double x0 = x[t];
            const double k1 = g0.velocity(x0, cap, ens.node_warnings);
            const double k2 = gh.velocity(x0 + half_dt * k1, cap, ens.node_warnings);
            const double k3 = gh.velocity(x0 + half_dt * k2, cap, ens.node_warnings);
            const double k4 = g1.velocity(x0 + dt * k3, cap, ens.node_warnings);
            double xn = x0 + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            if (xn < w.grid.x_min || xn > w.grid.x_max) {
                // left the box: park at the boundary and flag
                xn = std::clamp(xn, w.grid.x_min, w.grid.x_max);
                ens.absorbed[t] = 1;
                ++run.n_absorbed;
            }
            x[t] = xn;
        }

        w.amp = std::move(amp_full);
        w.time = t_now + dt;

        const bool save = (save_every != 0 && (s + 1) % save_every == 0) || s + 1 == steps;
        if (save) {
            ens.times.push_back(w.time);
            ens.paths.push_back(x);
        }

        if (blocker_pending && w.time + 1e-12 >= blocker.t_activate) {
            if (!save) {
                ens.times.push_back(w.time);
                ens.paths.push_back(x);
            }
            maybe_block(w.time);
            g0.build(w.grid, w.amp, fft, k, freq, deriv);
        } else {
            g0 = g1;
        }

        const double drift = std::abs(w.norm_l2() - 1.0);
        if (drift > kNormTol)
            throw std::runtime_error("run_ensemble: wave norm drifted beyond 1e-8");
    }

    run.final_wave = std::move(w);
    return run;
}

NullWindowReport interference_null_check(const EnsembleRun& on, const EnsembleRun& off,
                                         double x_lo, double x_hi, double off_threshold) {
    if (x_lo >= x_hi) throw std::invalid_argument("interference_null_check: empty window");
    NullWindowReport rep;
    rep.window_lo = x_lo;
    rep.window_hi = x_hi;

    auto fraction_in_window = [&](const std::vector<double>& xs) {
        if (xs.empty()) return 0.0;
        std::size_t c = 0;
        for (double v : xs)
            if (v >= x_lo && v <= x_hi) ++c;
        return static_cast<double>(c) / static_cast<double>(xs.size());
    };
    const auto off_final = off.ensemble.surviving_final_positions();
    const auto on_final = on.ensemble.surviving_final_positions();
    rep.fraction_off = fraction_in_window(off_final);
    rep.fraction_on = fraction_in_window(on_final);
    rep.expected_off = window_mass(off.final_wave, x_lo, x_hi);
    rep.expected_on = window_mass(on.final_wave, x_lo, x_hi);

    const double n_on = static_cast<double>(std::max<std::size_t>(on_final.size(), 1));
    rep.mc_sigma_on = std::sqrt(std::max(rep.expected_on * (1.0 - rep.expected_on), 1e-12) / n_on);
    rep.off_below_threshold = rep.fraction_off < off_threshold;
    rep.on_within_3sigma = std::abs(rep.fraction_on - rep.expected_on) <= 3.0 * rep.mc_sigma_on;
    rep.pass = rep.off_below_threshold && rep.on_within_3sigma && rep.fraction_on > 0.0;
    return rep;
}

PhaseFlipReport phase_flip_marginal(const WaveField& psi_plus, const WaveField& psi_minus,
                                    double region1_lo, double region1_hi, std::size_t n_check,
                                    std::uint64_t seed) {
    validate_wave(psi_plus);
    validate_wave(psi_minus);
    if (psi_plus.grid.n_points != psi_minus.grid.n_points ||
        psi_plus.grid.x_min != psi_minus.grid.x_min || psi_plus.grid.dx != psi_minus.grid.dx)
        throw std::invalid_argument("phase_flip_marginal: grids differ");

    // reconstruct the packets: psi1 = (plus + minus)/sqrt2, psi2 = (plus - minus)/sqrt2
    const WaveField packet1 = superpose(psi_plus, psi_minus, 1.0, 1.0);
    const WaveField packet2 = superpose(psi_plus, psi_minus, 1.0, -1.0);
    PhaseFlipReport rep;
    rep.packet_cross_mass = cross_mass(packet1, packet2);
    if (rep.packet_cross_mass >= 1e-10)
        throw std::invalid_argument(
            "phase_flip_marginal: packets are not disjoint (cross mass >= 1e-10); inapplicable");
    rep.applicable = true;

    for (std::size_t i = 0; i < psi_plus.grid.n_points; ++i) {
        const double x = psi_plus.grid.x(i);
        const double diff = std::abs(std::norm(psi_plus.amp[static_cast<Eigen::Index>(i)]) -
                                     std::norm(psi_minus.amp[static_cast<Eigen::Index>(i)]));
        if (x >= region1_lo && x <= region1_hi)
            rep.region1_max_diff = std::max(rep.region1_max_diff, diff);
        else
            rep.region2_max_diff = std::max(rep.region2_max_diff, diff);
    }

    const auto sp = sample_positions(psi_plus, n_check, seed);
    const auto sm = sample_positions(psi_minus, n_check, seed);
    for (std::size_t s = 0; s < n_check; ++s) {
        const bool in_p = sp[s] >= region1_lo && sp[s] <= region1_hi;
        const bool in_m = sm[s] >= region1_lo && sm[s] <= region1_hi;
        if (in_p) ++rep.region1_samples_plus;
        if (in_m) ++rep.region1_samples_minus;
        if (in_p && in_m)
            rep.subensemble_max_diff = std::max(rep.subensemble_max_diff, std::abs(sp[s] - sm[s]));
    }
    return rep;
}

OverlapDemoReport density_overlap_demo(const WaveField& psi, const WaveField& psi1) {
    validate_wave(psi);
    validate_wave(psi1);
    OverlapDemoReport rep;
    rep.overlap = grid_overlap_mass(psi, psi1);
    rep.strictly_positive = rep.overlap > 0.0;
    return rep;
}

WaveField packet_one(const TwoPacketSpec& s) {
    const auto g = Grid1D::make(s.x_min, s.x_max, s.n_points);
    return gaussian_packet(g, -s.separation, s.sigma, +s.speed);
}

WaveField packet_two(const TwoPacketSpec& s) {
    const auto g = Grid1D::make(s.x_min, s.x_max, s.n_points);
    return gaussian_packet(g, +s.separation, s.sigma, -s.speed);
}

WaveField two_packet_state(const TwoPacketSpec& s, double relative_phase_sign) {
    const double r = 1.0 / std::sqrt(2.0);
    return superpose(packet_one(s), packet_two(s), r, relative_phase_sign * r);
}

}  // namespace ontolab
