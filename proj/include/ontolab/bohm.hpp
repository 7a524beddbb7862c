#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace ontolab {

/// Uniform 1D grid, n_points a power of two >= 256, x_max included:
/// dx * (n_points - 1) = x_max - x_min. The FFT period is n_points * dx.
struct Grid1D {
    double x_min = 0.0;
    double x_max = 0.0;
    std::size_t n_points = 0;
    double dx = 0.0;

    static Grid1D make(double x_min, double x_max, std::size_t n_points);
    double x(std::size_t i) const { return x_min + dx * static_cast<double>(i); }
};

/// Complex wave on a grid, unit L2 norm (sum |psi|^2 dx = 1 within 1e-8).
struct WaveField {
    Grid1D grid;
    Eigen::VectorXcd amp;
    double time = 0.0;

    double norm_l2() const;  // sum |psi|^2 dx
};

void validate_wave(const WaveField& w);

/// Normalized Gaussian packet exp(-(x-center)^2/(4 sigma^2) + i momentum x).
WaveField gaussian_packet(const Grid1D& grid, double center, double sigma, double momentum);

/// Normalized ca * a + cb * b.
WaveField superpose(const WaveField& a, const WaveField& b, std::complex<double> ca,
                    std::complex<double> cb);

/// integral of |psi|^2 over [x_lo, x_hi] (rectangle rule).
double window_mass(const WaveField& w, double x_lo, double x_hi);

/// integral |a| |b| dx: packet-disjointness measure.
double cross_mass(const WaveField& a, const WaveField& b);

/// integral min(|a|^2, |b|^2) dx: the grid version of the epistemic overlap.
double grid_overlap_mass(const WaveField& a, const WaveField& b);

/// Mean and variance of the position distribution |psi|^2.
double position_mean(const WaveField& w);
double position_variance(const WaveField& w);

/// Split-step spectral propagation under H = k^2/2 + V (units hbar = m = 1).
/// Aborts with a diagnostic if the norm drifts beyond 1e-8.
WaveField evolve(const WaveField& psi, const std::vector<double>& potential, double dt,
                 int steps);

/// Pilot-wave velocity Im(psi* dpsi/dx)/|psi|^2 at x, linear interpolation of
/// a spectral derivative. Evaluations where the local density is below 1e-14
/// are capped and counted through warn_counter when given.
double guidance_velocity(const WaveField& psi, double x, std::size_t* warn_counter = nullptr);

/// Absorptive beam blocker: at the first step boundary at or after
/// t_activate the amplitude over [x_lo, x_hi] is zeroed and the wave
/// renormalized; trajectories inside the region are absorbed and flagged.
struct BlockerConfig {
    bool enabled = false;
    double x_lo = 0.0;
    double x_hi = 0.0;
    double t_activate = 0.0;
};

struct TrajectoryEnsemble {
    std::vector<double> initial_positions;       // |psi_0|^2 sample, in draw order
    std::vector<double> times;                   // saved snapshot times
    std::vector<std::vector<double>> paths;      // paths[s][traj] at times[s]
    std::vector<char> absorbed;                  // hit the blocker (or left the grid)
    std::uint64_t seed = 0;
    std::size_t node_warnings = 0;

    const std::vector<double>& final_positions() const { return paths.back(); }
    std::vector<double> surviving_final_positions() const;
};

struct EnsembleRun {
    TrajectoryEnsemble ensemble;
    WaveField final_wave;
    std::size_t n_absorbed = 0;
};

/// Samples x(0) from |psi0|^2, integrates dx/dt = guidance velocity with RK4
/// while co-evolving the wave (free propagation), applying the blocker mask
/// when configured. save_every = 0 keeps only the initial and final snapshots.
EnsembleRun run_ensemble(const WaveField& psi0, const BlockerConfig& blocker,
                         std::size_t n_traj, double dt, double t_final, std::uint64_t seed,
                         std::size_t save_every = 0);

/// Inverse-CDF sample of |psi|^2, deterministic per seed.
std::vector<double> sample_positions(const WaveField& psi, std::size_t n, std::uint64_t seed);

/// Two-sided Kolmogorov-Smirnov statistic between samples and the |psi|^2
/// distribution on the grid.
double ks_statistic(std::vector<double> samples, const WaveField& reference);

struct NullWindowReport {
    double window_lo = 0.0, window_hi = 0.0;
    double fraction_off = 0.0;   // trajectories in window, blocker off
    double fraction_on = 0.0;    // surviving trajectories in window, blocker on
    double expected_off = 0.0;   // window mass of the off final wave
    double expected_on = 0.0;    // window mass of the on final wave (single packet)
    double mc_sigma_on = 0.0;
    bool off_below_threshold = false;
    bool on_within_3sigma = false;
    bool pass = false;
};

/// Compares trajectory counts in the interference-null window between the
/// blocker-on and blocker-off runs against the wave-density oracles.
NullWindowReport interference_null_check(const EnsembleRun& on, const EnsembleRun& off,
                                         double x_lo, double x_hi,
                                         double off_threshold = 0.01);

struct PhaseFlipReport {
    bool applicable = false;
    double packet_cross_mass = 0.0;    // between the reconstructed packets
    double region1_max_diff = 0.0;     // pointwise |density difference| on region 1
    double region2_max_diff = 0.0;
    double subensemble_max_diff = 0.0; // same-seed initial samples inside region 1
    std::size_t region1_samples_plus = 0;
    std::size_t region1_samples_minus = 0;
};

/// Checks that the plus and minus superpositions have identical position
/// densities on region 1 and identical region-1 initial subensembles.
/// Throws std::invalid_argument when the packets are not disjoint.
PhaseFlipReport phase_flip_marginal(const WaveField& psi_plus, const WaveField& psi_minus,
                                    double region1_lo, double region1_hi,
                                    std::size_t n_check = 4096,
                                    std::uint64_t seed = 99991);

struct OverlapDemoReport {
    double overlap = 0.0;
    bool strictly_positive = false;
};

/// Epistemic-overlap demo: position densities of psi and psi1 overlap even
/// though the states differ.
OverlapDemoReport density_overlap_demo(const WaveField& psi, const WaveField& psi1);

/// Default two-packet interferometer used by the CLI and the test suites:
/// symmetric Gaussians kicked toward each other, meeting at the origin.
struct TwoPacketSpec {
    double x_min = -40.0;
    double x_max = 40.0;
    std::size_t n_points = 2048;
    double sigma = 1.0;
    double separation = 10.0;  // packet centers at -+separation
    double speed = 2.0;        // packet momenta +-speed
};

WaveField packet_one(const TwoPacketSpec& s);   // left packet, moving right
WaveField packet_two(const TwoPacketSpec& s);   // right packet, moving left
WaveField two_packet_state(const TwoPacketSpec& s, double relative_phase_sign = +1.0);

}  // namespace ontolab
