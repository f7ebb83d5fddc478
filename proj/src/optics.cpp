#include "entsim/optics.hpp"

#include <cmath>

namespace entsim::optics {

namespace {
constexpr double kDegToRad = M_PI / 180.0;
const cplx kI{0.0, 1.0};
} // namespace

AnalyzerSetting::AnalyzerSetting(double deg) {
    theta_deg = std::fmod(deg, 180.0);
    if (theta_deg < 0.0) theta_deg += 180.0;
}

Eigen::Matrix2cd PolProjector::matrix() const {
    Eigen::Vector2cd j(h, v);
    return j * j.adjoint();
}

PolProjector polarizer_projector(const AnalyzerSetting& theta) {
    const double t = theta.theta_deg * kDegToRad;
    return {cplx{std::cos(t), 0.0}, cplx{std::sin(t), 0.0}};
}

PolProjector named_projector(char name) {
    const double s = 1.0 / std::sqrt(2.0);
    switch (name) {
        case 'H': return {1.0, 0.0};
        case 'V': return {0.0, 1.0};
        case 'D': return {s, s};
        case 'A': return {s, -s};
        case 'R': return {s, -kI * s};
        case 'L': return {s, kI * s};
        default: throw InvalidParameterError(std::string("unknown projector '") + name + "'");
    }
}

Eigen::Matrix2cd hwp_jones(double angle_deg) {
    const double a = 2.0 * angle_deg * kDegToRad;
    Eigen::Matrix2cd m;
    m << std::cos(a), std::sin(a), std::sin(a), -std::cos(a);
    return m;
}

Eigen::Matrix2cd qwp_jones(double angle_deg) {
    // R(theta) diag(1, i) R(-theta)
    const double t = angle_deg * kDegToRad;
    const double c = std::cos(t), s = std::sin(t);
    Eigen::Matrix2cd r, d;
    r << c, -s, s, c;
    d << 1.0, 0.0, 0.0, kI;
    return r * d * r.transpose();
}

Eigen::Matrix2cd misalignment_jones(double rot_deg, double phase_rad) {
    const double t = rot_deg * kDegToRad;
    const double c = std::cos(t), s = std::sin(t);
    Eigen::Matrix2cd r, d;
    r << c, -s, s, c;
    d << 1.0, 0.0, 0.0, std::exp(kI * phase_rad);
    return r * d;
}

FockState apply_jones(const FockState& s, Path path, const Eigen::Matrix2cd& jones) {
    // The Jones matrix maps input polarization components to output ones,
    // |out> = J |in|; creation operators transform with the transpose:
    // a†_H -> J00 a†_H' + J10 a†_V' etc. Here primed modes equal unprimed.
    Eigen::Matrix2cd u = jones.transpose();
    FockState out = s;
    for (Label l : {Label::A, Label::B}) {
        out = apply_two_mode_unitary(out, Mode{path, Pol::H, l},
                                     Mode{path, Pol::V, l}, u);
    }
    return out;
}

FockState hwp(const FockState& s, Path path, double angle_deg) {
    if (!std::isfinite(angle_deg)) throw InvalidParameterError("hwp: angle must be finite");
    return apply_jones(s, path, hwp_jones(angle_deg));
}

FockState qwp(const FockState& s, Path path, double angle_deg) {
    if (!std::isfinite(angle_deg)) throw InvalidParameterError("qwp: angle must be finite");
    return apply_jones(s, path, qwp_jones(angle_deg));
}

FockState fiber_beam_splitter(const FockState& s, const SplitterSpec& spec) {
    spec.validate();
    FockState out = s;
    for (Pol pol : {Pol::H, Pol::V}) {
        const double t = (pol == Pol::H) ? spec.transmittance_h : spec.transmittance_v;
        const cplx refl = ((pol == Pol::H) ? kI : -kI) * std::sqrt(1.0 - t);
        const cplx tran = std::sqrt(t);
        // Rows: (lo-in, signal-in) onto (out1, out2). The LO transmits into
        // out1, the signal into out2.
        Eigen::Matrix2cd u;
        u << tran, refl, refl, tran;
        for (Label l : {Label::A, Label::B}) {
            out = apply_two_mode_unitary(out, Mode{Path::LoIn, pol, l},
                                         Mode{Path::SignalIn, pol, l},
                                         Mode{Path::Out1, pol, l},
                                         Mode{Path::Out2, pol, l}, u);
        }
    }
    return out;
}

} // namespace entsim::optics
