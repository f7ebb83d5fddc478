#pragma once

// Loss channels, threshold detectors, the analytic three-fold coincidence
// engine, Monte Carlo click sampling, rate prediction and the higher-order
// photon budget.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "entsim/fock.hpp"
#include "entsim/optics.hpp"
#include "entsim/sources.hpp"

namespace entsim::detection {

struct DetectionParams {
    double eta = 0.3;    // signal/idler collection+detection efficiency
    double eta_l = 0.37; // LO channel efficiency
    double f_hz = 76e6;  // pulse repetition rate

    void validate() const {
        if (!(eta > 0.0 && eta <= 1.0) || !(eta_l > 0.0 && eta_l <= 1.0))
            throw InvalidParameterError("efficiencies must be in (0,1]");
        if (!(f_hz > 0.0)) throw InvalidParameterError("repetition rate must be > 0");
    }
};

struct RateReport {
    double c1_signal = 0.0;
    double c1_idler = 0.0;
    double c2 = 0.0;
    double c_l = 0.0;
    double c3 = 0.0;
    double mu_est = 0.0;
    double nu_est = 0.0;
};

struct HigherOrderBudget {
    double p111 = 0.0;
    double p112 = 0.0;
    double p220 = 0.0;
    double ratio = 0.0; // (p112 + p220) / p111
};

// Probability-weighted ensemble of pure states; branch weight is the squared
// norm of the (unnormalized) branch state.
using Ensemble = std::vector<FockState>;

double total_weight(const Ensemble& e);

// Independent Bernoulli survival with probability eta for every photon in the
// given modes. Branches are indexed by the per-mode loss pattern; amplitudes
// with the same pattern stay coherent.
Ensemble loss_channel(const FockState& s, const std::vector<Mode>& modes, double eta);
Ensemble loss_channel(const Ensemble& e, const std::vector<Mode>& modes, double eta);
// Convenience: all four (pol, label) sublevels of a path.
Ensemble loss_channel(const FockState& s, Path path, double eta);
Ensemble loss_channel(const Ensemble& e, Path path, double eta);

// Static configuration of one experiment run.
struct ExperimentSetup {
    sources::SpdcParams spdc;
    sources::CoherentParams lo;
    sources::OverlapModel overlap;
    optics::SplitterSpec splitter;
    double arm1_rot_deg = 0.0;
    double arm1_phase_rad = 0.0;
    double arm2_rot_deg = 0.0;
    double arm2_phase_rad = 0.0;
    DetectionParams det;
    double dark_d1 = 0.0;    // per-pulse dark-click probabilities
    double dark_d2 = 0.0;
    double dark_idler = 0.0;
    int n_max = kDefaultNMax;
    // Condition the source on exactly one pair plus one LO photon.
    bool sector_111_only = false;
};

// Analyzer configuration for the two output arms; absent = no polarizer.
struct AnalyzerPair {
    std::optional<optics::PolProjector> arm1;
    std::optional<optics::PolProjector> arm2;

    static AnalyzerPair none() { return {}; }
    static AnalyzerPair angles(double theta1_deg, double theta2_deg);
    static AnalyzerPair named(char p1, char p2);
};

// Source + loss + splitter + arm imperfections evaluated once; analyzer
// settings are then cheap diagonal sums on the cached branches.
class PreparedEnsemble {
  public:
    PreparedEnsemble(const ExperimentSetup& setup, double tau_um);

    // Joint click-pattern distribution over (idler, det1, det2); index is
    // (idler<<2)|(det1<<1)|det2. Includes dark counts.
    std::array<double, 8> pattern_probabilities(const AnalyzerPair& analyzers) const;
    double threefold(const AnalyzerPair& analyzers) const;

    double pruned_mass() const { return pruned_mass_; }
    const Ensemble& branches() const { return branches_; }

  private:
    Ensemble branches_;
    double pruned_mass_ = 0.0;
    double dark_d1_, dark_d2_, dark_idler_;
};

struct ThreefoldResult {
    double probability = 0.0;
    double pruned_mass = 0.0;
    bool truncation_warning = false; // pruned mass > 1e-6 x probability
};

// Exact enumeration over the truncated ensemble: threshold detectors click
// iff at least one photon arrives post-loss and post-polarizer.
ThreefoldResult threefold_probability(const ExperimentSetup& setup,
                                      const AnalyzerPair& analyzers,
                                      double tau_um = 0.0);

// One row of a coincidence record: a setting and its sampled counts.
struct CountEntry {
    std::string setting1; // "45" (degrees) or a named projector "D"
    std::string setting2;
    double delay_um = 0.0;
    std::uint64_t pulses = 0;
    std::uint64_t counts = 0;
    double analytic_probability = 0.0;
};

struct CountRecord {
    std::vector<CountEntry> entries;

    std::string to_csv() const;
    static CountRecord from_csv(const std::string& text);
};

// Per-pulse Bernoulli sampling of the three-fold click with the analytic
// probability of the prepared ensemble. Deterministic in (seed, chunking):
// pulses are processed in fixed-size chunks whose streams derive from
// (seed, stream_id, chunk index), so identical seeds give identical counts.
std::uint64_t sample_threefold_counts(double probability, std::uint64_t n_pulses,
                                      std::uint64_t seed, std::uint64_t stream_id);

inline constexpr std::uint64_t kPulseChunk = 1u << 20;

// c3 = c2 c_l / (2 f), mu = c1/(eta f), nu = c_l/(eta_l f).
RateReport predict_rates(double c1, double c2, double c_l, const DetectionParams& p);

// Closed forms for the three leading three-fold sectors:
//   p111 = 1/2 |a1|^2 |c1|^2 eta^2 eta_l
//   p112 = 1/2 |a1|^2 |c2|^2 eta eta_l^2
//   p220 = 1/2 |a2|^2 |c0|^2 (1 - (1-eta)^2) eta^2
HigherOrderBudget higher_order_budget(double mu, double nu, double eta, double eta_l);

} // namespace entsim::detection
