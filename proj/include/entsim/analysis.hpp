#pragma once

// Estimators on coincidence records and density matrices: CHSH statistics,
// fringe and dip visibilities, maximum-likelihood tomography, and
// entanglement measures.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "entsim/detection.hpp"
#include "entsim/fock.hpp"
#include "entsim/optics.hpp"

namespace entsim::analysis {

struct Estimate {
    double value = 0.0;
    double std_err = 0.0;
};

// One coincidence count at a polarizer-angle pair. Counts are doubles so
// that analytic expected counts can be analyzed with the same estimators.
struct AngleCount {
    double theta1_deg = 0.0;
    double theta2_deg = 0.0;
    double counts = 0.0;
};
using AngleRecord = std::vector<AngleCount>;

AngleRecord angle_record(const detection::CountRecord& rec);

struct ChshSettings {
    double theta1 = 45.0;
    double theta1p = 90.0;
    double theta2 = 22.5;
    double theta2p = 67.5;
};

// E = (c_pp + c_tt - c_tp - c_pt) / (sum), with propagated Poisson error.
// Inputs are C(t1,t2), C(t1~,t2~), C(t1~,t2), C(t1,t2~) where ~ is +90 deg.
Estimate correlation_e(double c_pp, double c_tt, double c_tp, double c_pt);

struct BellResult {
    double s_signed = 0.0;
    double s_abs = 0.0;
    double std_err = 0.0;
    bool violation = false; // s_abs - 2 > 2 std_err
    std::array<Estimate, 4> e; // E(t1,t2), E(t1',t2), E(t1,t2'), E(t1',t2')
};

BellResult bell_s(const AngleRecord& rec, const ChshSettings& settings = {});

struct FringeFit {
    double visibility = 0.0; // B / (2A + B) for A + B sin^2(theta + phi)
    double amplitude = 0.0;  // B
    double offset = 0.0;     // A
    double phase_deg = 0.0;  // phi
    bool passes_chsh_bound = false; // visibility > 1/sqrt(2)
};

// Least-squares sinusoid fit over a theta1 sweep at fixed theta2. Needs at
// least 4 points spanning at least 180 degrees.
FringeFit fringe_visibility(const std::vector<std::pair<double, double>>& theta_counts);

struct HomFit {
    double visibility = 0.0;
    double fwhm_um = 0.0;
    double baseline = 0.0;
};

// Gaussian-dip fit C0 (1 - V exp(-4 ln2 tau^2 / w^2)) over (tau, counts).
HomFit hom_visibility(const std::vector<std::pair<double, double>>& tau_counts);

// ---- tomography ----

struct TomoCount {
    optics::PolProjector p1, p2;
    std::string label1, label2;
    double counts = 0.0;
};

// Projector pairs over {H,V,D,R} (16 settings, informationally complete) or
// {H,V,D,A,R,L} (36 settings, overcomplete).
std::vector<std::pair<char, char>> tomo_settings_16();
std::vector<std::pair<char, char>> tomo_settings_36();

// Expected counts intensity * Tr[(P1 x P2) rho] for each setting.
std::vector<TomoCount> expected_tomo_counts(const TwoQubitDensityMatrix& rho,
                                            const std::vector<std::pair<char, char>>& settings,
                                            double intensity);

struct TomoOptions {
    int starts = 8;
    std::uint64_t seed = 0;
    int max_iterations = 100000;
    double grad_tol = 1e-8;
};

struct TomoResult {
    TwoQubitDensityMatrix rho;
    Eigen::Matrix4cd g =
        Eigen::Matrix4cd::Zero(); // triangular factor at the optimum
    double log_likelihood = 0.0;
    double grad_norm = 0.0;
    int iterations = 0;
    int best_start = 0;
    bool converged = false;
};

// Poisson maximum-likelihood reconstruction with rho = G'G / tr(G'G), G
// complex lower triangular (16 real parameters), seeded multi-start L-BFGS.
TomoResult tomography_mle(const std::vector<TomoCount>& counts,
                          const TomoOptions& options = {});

struct TomoErrors {
    double fidelity_err = 0.0;
    double concurrence_err = 0.0;
    double eof_err = 0.0;
};

// Parametric bootstrap: Poisson-resample the counts, refit warm-started from
// the point estimate, report standard deviations of the derived scalars.
TomoErrors bootstrap_tomo_errors(const std::vector<TomoCount>& counts,
                                 const TomoResult& fit, int resamples = 1000,
                                 std::uint64_t seed = 0);

// ---- scalar measures ----

// |psi+> = (|HV> + |VH>)/sqrt(2) in the (HH, HV, VH, VV) basis.
Eigen::Vector4cd psi_plus();
TwoQubitDensityMatrix psi_plus_dm();

// F = <psi+| rho |psi+>.
double fidelity(const TwoQubitDensityMatrix& rho);
// Uhlmann fidelity between two density matrices.
double state_fidelity(const TwoQubitDensityMatrix& a, const TwoQubitDensityMatrix& b);
double trace_distance(const TwoQubitDensityMatrix& a, const TwoQubitDensityMatrix& b);

double concurrence(const TwoQubitDensityMatrix& rho);
// Entanglement of formation from the concurrence (binary entropy, bits).
double eof(double concurrence_value);

// F_est = p111 / (p111 + p112 + p220) = 1 / (1 + ratio).
double higher_order_fidelity_estimate(const detection::HigherOrderBudget& budget);

struct EntanglementReport {
    Estimate fidelity;
    Estimate concurrence;
    Estimate eof;
    Estimate s_parameter;
    Estimate min_fringe_visibility;
};

} // namespace entsim::analysis
