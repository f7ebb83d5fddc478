#include "entsim/detection.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "entsim/rng.hpp"

namespace entsim::detection {

double total_weight(const Ensemble& e) {
    double w = 0.0;
    for (const auto& s : e) w += s.norm2();
    return w;
}

namespace {

// Split an ensemble on the number of photons lost from one mode.
Ensemble lose_from_mode(const Ensemble& in, int mode_index, double eta) {
    const double etabar = 1.0 - eta;
    Ensemble out;
    for (const FockState& branch : in) {
        int max_n = 0;
        for (const auto& [occ, amp] : branch.terms())
            max_n = std::max(max_n, occ.count(mode_index));
        for (int lost = 0; lost <= max_n; ++lost) {
            FockState next(branch.n_max());
            if (lost == 0) next.add_pruned_mass(branch.pruned_mass());
            for (const auto& [occ, amp] : branch.terms()) {
                const int n = occ.count(mode_index);
                if (n < lost) continue;
                const double w = binomial(n, lost) * std::pow(eta, n - lost) *
                                 std::pow(etabar, lost);
                if (w == 0.0) continue;
                next.accumulate(occ.with(mode_index, -lost), amp * std::sqrt(w));
            }
            next.finalize();
            if (next.term_count() > 0 || lost == 0) out.push_back(std::move(next));
        }
    }
    return out;
}

std::vector<Mode> path_modes(Path p) {
    std::vector<Mode> m;
    for (Pol pol : {Pol::H, Pol::V})
        for (Label l : {Label::A, Label::B}) m.push_back(Mode{p, pol, l});
    return m;
}

} // namespace

Ensemble loss_channel(const Ensemble& e, const std::vector<Mode>& modes, double eta) {
    if (!(eta >= 0.0 && eta <= 1.0))
        throw InvalidParameterError("loss: eta must be in [0,1]");
    if (eta == 1.0) return e;
    Ensemble cur = e;
    for (const Mode& m : modes) cur = lose_from_mode(cur, m.index(), eta);
    return cur;
}

Ensemble loss_channel(const FockState& s, const std::vector<Mode>& modes, double eta) {
    return loss_channel(Ensemble{s}, modes, eta);
}

Ensemble loss_channel(const FockState& s, Path path, double eta) {
    return loss_channel(s, path_modes(path), eta);
}

Ensemble loss_channel(const Ensemble& e, Path path, double eta) {
    return loss_channel(e, path_modes(path), eta);
}

AnalyzerPair AnalyzerPair::angles(double theta1_deg, double theta2_deg) {
    AnalyzerPair p;
    p.arm1 = optics::polarizer_projector(optics::AnalyzerSetting(theta1_deg));
    p.arm2 = optics::polarizer_projector(optics::AnalyzerSetting(theta2_deg));
    return p;
}

AnalyzerPair AnalyzerPair::named(char p1, char p2) {
    AnalyzerPair p;
    p.arm1 = optics::named_projector(p1);
    p.arm2 = optics::named_projector(p2);
    return p;
}

namespace {

// Basis change on one path so that the analyzer's transmitted axis becomes
// the H sublevel: a†_H -> conj(a) a†_ξ - b a†_ξ⊥, a†_V -> conj(b) a†_ξ + a a†_ξ⊥.
FockState rotate_to_analyzer(const FockState& s, Path path,
                             const optics::PolProjector& proj) {
    Eigen::Matrix2cd u;
    u << std::conj(proj.h), -proj.v, std::conj(proj.v), proj.h;
    FockState out = s;
    for (Label l : {Label::A, Label::B})
        out = apply_two_mode_unitary(out, Mode{path, Pol::H, l},
                                     Mode{path, Pol::V, l}, u);
    return out;
}

int transmitted_photons(const Occupation& occ, Path path, bool has_analyzer) {
    if (!has_analyzer) return occ.total_in_path(path);
    return occ.count(Mode{path, Pol::H, Label::A}) +
           occ.count(Mode{path, Pol::H, Label::B});
}

} // namespace

PreparedEnsemble::PreparedEnsemble(const ExperimentSetup& setup, double tau_um)
    : dark_d1_(setup.dark_d1), dark_d2_(setup.dark_d2), dark_idler_(setup.dark_idler) {
    setup.det.validate();
    const cplx zeta = sources::overlap_at_delay(setup.overlap, tau_um);
    FockState pairs = sources::spdc_state(setup.spdc, setup.n_max);
    FockState lo = sources::lo_with_distinguishability(setup.lo, zeta, setup.n_max);
    FockState input = tensor(pairs, lo);

    if (setup.sector_111_only) {
        FockState filtered(input.n_max());
        for (const auto& [occ, amp] : input.terms())
            if (occ.total_in_path(Path::SignalIn) == 1 &&
                occ.total_in_path(Path::Idler) == 1 &&
                occ.total_in_path(Path::LoIn) == 1)
                filtered.accumulate(occ, amp);
        filtered.finalize();
        input = filtered.normalized();
        // Conditioning is intentional, not truncation error.
        input.add_pruned_mass(-input.pruned_mass());
    }

    Ensemble ens{input};
    ens = loss_channel(ens, Path::SignalIn, setup.det.eta);
    ens = loss_channel(ens, Path::Idler, setup.det.eta);
    ens = loss_channel(ens, Path::LoIn, setup.det.eta_l);

    const bool arm1_id = setup.arm1_rot_deg == 0.0 && setup.arm1_phase_rad == 0.0;
    const bool arm2_id = setup.arm2_rot_deg == 0.0 && setup.arm2_phase_rad == 0.0;
    for (FockState& b : ens) {
        b = optics::fiber_beam_splitter(b, setup.splitter);
        if (!arm1_id)
            b = optics::apply_jones(b, Path::Out1,
                                    optics::misalignment_jones(setup.arm1_rot_deg,
                                                               setup.arm1_phase_rad));
        if (!arm2_id)
            b = optics::apply_jones(b, Path::Out2,
                                    optics::misalignment_jones(setup.arm2_rot_deg,
                                                               setup.arm2_phase_rad));
        pruned_mass_ += b.pruned_mass();
    }
    branches_ = std::move(ens);
}

std::array<double, 8> PreparedEnsemble::pattern_probabilities(
    const AnalyzerPair& analyzers) const {
    std::array<double, 8> p{};
    for (const FockState& branch : branches_) {
        FockState b = branch;
        if (analyzers.arm1) b = rotate_to_analyzer(b, Path::Out1, *analyzers.arm1);
        if (analyzers.arm2) b = rotate_to_analyzer(b, Path::Out2, *analyzers.arm2);
        for (const auto& [occ, amp] : b.terms()) {
            const bool idler = occ.total_in_path(Path::Idler) >= 1;
            const bool d1 =
                transmitted_photons(occ, Path::Out1, analyzers.arm1.has_value()) >= 1;
            const bool d2 =
                transmitted_photons(occ, Path::Out2, analyzers.arm2.has_value()) >= 1;
            p[(idler << 2) | (d1 << 1) | int(d2)] += std::norm(amp);
        }
    }

    if (dark_d1_ == 0.0 && dark_d2_ == 0.0 && dark_idler_ == 0.0) return p;

    // OR each detector with an independent dark click.
    const double d[3] = {dark_idler_, dark_d1_, dark_d2_};
    std::array<double, 8> out{};
    for (int q = 0; q < 8; ++q) {
        if (p[q] == 0.0) continue;
        for (int r = 0; r < 8; ++r) {
            double t = p[q];
            for (int k = 0; k < 3; ++k) {
                const bool qb = (q >> (2 - k)) & 1;
                const bool rb = (r >> (2 - k)) & 1;
                if (qb) t *= rb ? 1.0 : 0.0;
                else t *= rb ? d[k] : 1.0 - d[k];
            }
            out[r] += t;
        }
    }
    return out;
}

double PreparedEnsemble::threefold(const AnalyzerPair& analyzers) const {
    return pattern_probabilities(analyzers)[7];
}

ThreefoldResult threefold_probability(const ExperimentSetup& setup,
                                      const AnalyzerPair& analyzers, double tau_um) {
    PreparedEnsemble prep(setup, tau_um);
    ThreefoldResult r;
    r.probability = prep.threefold(analyzers);
    r.pruned_mass = prep.pruned_mass();
    r.truncation_warning = r.pruned_mass > 1e-6 * r.probability;
    return r;
}

std::uint64_t sample_threefold_counts(double probability, std::uint64_t n_pulses,
                                      std::uint64_t seed, std::uint64_t stream_id) {
    const std::uint64_t base = derive_stream(seed, stream_id);
    std::uint64_t counts = 0;
    std::uint64_t done = 0;
    for (std::uint64_t chunk = 0; done < n_pulses; ++chunk) {
        const std::uint64_t n = std::min<std::uint64_t>(kPulseChunk, n_pulses - done);
        SplitMix64 rng(derive_stream(base, chunk));
        for (std::uint64_t i = 0; i < n; ++i)
            if (rng.next_double() < probability) ++counts;
        done += n;
    }
    return counts;
}

RateReport predict_rates(double c1, double c2, double c_l, const DetectionParams& p) {
    p.validate();
    if (c1 < 0.0 || c2 < 0.0 || c_l < 0.0)
        throw InvalidParameterError("rates must be non-negative");
    if (c2 > c1)
        throw InvalidParameterError("two-fold rate cannot exceed the singles rate");
    RateReport r;
    r.c1_signal = c1;
    r.c1_idler = c1;
    r.c2 = c2;
    r.c_l = c_l;
    r.c3 = c2 * c_l / (2.0 * p.f_hz);
    r.mu_est = c1 / (p.eta * p.f_hz);
    r.nu_est = c_l / (p.eta_l * p.f_hz);
    return r;
}

HigherOrderBudget higher_order_budget(double mu, double nu, double eta, double eta_l) {
    sources::SpdcParams spdc{mu};
    spdc.validate();
    if (!(nu >= 0.0)) throw InvalidParameterError("nu must be >= 0");
    DetectionParams det{eta, eta_l, 1.0};
    det.validate();

    const double p = spdc.p();
    const double a1 = p * (1.0 - p);
    const double a2 = p * (1.0 - p) * (1.0 - p);
    const double c0 = std::exp(-nu);
    const double c1 = c0 * nu;
    const double c2 = c0 * nu * nu / 2.0;
    const double etabar = 1.0 - eta;

    HigherOrderBudget b;
    b.p111 = 0.5 * a1 * c1 * eta * eta * eta_l;
    b.p112 = 0.5 * a1 * c2 * eta * eta_l * eta_l;
    b.p220 = 0.5 * a2 * c0 * (1.0 - etabar * etabar) * eta * eta;
    b.ratio = b.p111 > 0.0 ? (b.p112 + b.p220) / b.p111 : 0.0;
    return b;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace

std::string CountRecord::to_csv() const {
    std::ostringstream os;
    os << "theta1_deg,theta2_deg,delay_um,pulses,c3_counts\n";
    for (const auto& e : entries)
        os << e.setting1 << "," << e.setting2 << "," << e.delay_um << ","
           << e.pulses << "," << e.counts << "\n";
    return os.str();
}

CountRecord CountRecord::from_csv(const std::string& text) {
    CountRecord rec;
    std::istringstream is(text);
    std::string line;
    bool header_seen = false;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true; // column names
            continue;
        }
        auto f = split_csv_line(line);
        if (f.size() != 5)
            throw IncompleteRecordError("count record row needs 5 columns: " + line);
        CountEntry e;
        e.setting1 = f[0];
        e.setting2 = f[1];
        e.delay_um = std::stod(f[2]);
        e.pulses = std::stoull(f[3]);
        e.counts = std::stoull(f[4]);
        rec.entries.push_back(std::move(e));
    }
    return rec;
}

} // namespace entsim::detection
