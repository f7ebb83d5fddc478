#pragma once

// Polarization optics on Fock states: wave plates, polarizer projectors, the
// fiber beam splitter, and the static fiber-misalignment unitary.
//
// Beam-splitter convention. The splitter maps the input paths onto the two
// outputs with the reflected amplitude picking up phase +i for H and -i for V:
//   H sublevel: a†_lo  -> sqrt(T_H) a†_out1 + i sqrt(1-T_H) a†_out2
//               a†_sig -> i sqrt(1-T_H) a†_out1 + sqrt(T_H) a†_out2
//   V sublevel: a†_sig -> -i sqrt(1-T_V) a†_out1 + sqrt(T_V) a†_out2
//               a†_lo  -> sqrt(T_V) a†_out1 - i sqrt(1-T_V) a†_out2
// With a V signal and an H local oscillator this produces the four-term
// superposition whose split part is (|HV> + |VH>)/2, i.e. the psi+ Bell state
// after post-selection.

#include <complex>

#include "entsim/fock.hpp"

namespace entsim::optics {

struct AnalyzerSetting {
    double theta_deg = 0.0; // stored modulo 180

    AnalyzerSetting() = default;
    explicit AnalyzerSetting(double deg);
    AnalyzerSetting perp() const { return AnalyzerSetting(theta_deg + 90.0); }
};

struct SplitterSpec {
    double transmittance_h = 0.5;
    double transmittance_v = 0.5;

    void validate() const {
        if (!(transmittance_h > 0.0 && transmittance_h < 1.0) ||
            !(transmittance_v > 0.0 && transmittance_v < 1.0))
            throw InvalidParameterError("splitter transmittance must be in (0,1)");
    }
};

// Normalized Jones vector of the transmitted axis of an analyzer.
struct PolProjector {
    cplx h = cplx{1.0, 0.0};
    cplx v = cplx{0.0, 0.0};

    PolProjector orthogonal() const { return {-std::conj(v), std::conj(h)}; }
    // Rank-1 projector matrix on the (H, V) pair.
    Eigen::Matrix2cd matrix() const;
};

// Projector onto |theta> = cos(theta)|H> + sin(theta)|V>.
PolProjector polarizer_projector(const AnalyzerSetting& theta);
// Projectors for the named tomography kets H, V, D, A, R, L.
PolProjector named_projector(char name);

// Jones unitaries (fast axis at angle_deg from H).
Eigen::Matrix2cd hwp_jones(double angle_deg);
Eigen::Matrix2cd qwp_jones(double angle_deg);
// Physical rotation by angle_deg followed by a retardation phase on V.
Eigen::Matrix2cd misalignment_jones(double rot_deg, double phase_rad);

// Apply a Jones unitary to the (H, V) pair of one path, per internal label.
FockState apply_jones(const FockState& s, Path path, const Eigen::Matrix2cd& jones);

FockState hwp(const FockState& s, Path path, double angle_deg);
FockState qwp(const FockState& s, Path path, double angle_deg);

// Route signal-in and lo-in onto out1/out2 with the convention above,
// separately per (polarization, internal label) sublevel.
FockState fiber_beam_splitter(const FockState& s, const SplitterSpec& spec);

} // namespace entsim::optics
