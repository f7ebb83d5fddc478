#pragma once

// Input states: the two-mode SPDC pair state with geometric photon-number
// statistics, the weak coherent local-oscillator pulse with Poisson
// statistics, and the delay-dependent mode-overlap model that feeds the
// internal-label decomposition of the LO photon.

#include <complex>

#include "entsim/fock.hpp"

namespace entsim::sources {

struct SpdcParams {
    double mu = 4.3e-4; // mean photon number per pulse in the signal mode

    double p() const { return 1.0 / (1.0 + mu); }
    void validate() const {
        if (!(mu > 0.0)) throw InvalidParameterError("spdc: mu must be > 0");
    }
};

struct CoherentParams {
    double nu = 2.1e-2; // mean photon number per pulse
    Pol pol = Pol::H;
    double phase = 0.0; // radians

    void validate() const {
        if (!(nu >= 0.0)) throw InvalidParameterError("coherent: nu must be >= 0");
    }
};

struct OverlapModel {
    cplx zeta0 = cplx{1.0, 0.0}; // peak mode overlap, |zeta0| <= 1
    double dip_fwhm_um = 50.7;   // FWHM of |zeta(tau)|^2 in optical path delay

    void validate() const {
        if (std::abs(zeta0) > 1.0 + 1e-12)
            throw InvalidOverlapError("overlap: |zeta0| must be <= 1");
        if (!(dip_fwhm_um > 0.0))
            throw InvalidParameterError("overlap: dip FWHM must be > 0");
    }
};

// sum_n sqrt(p (1-p)^n) |n>_signal(V,a) |n>_idler, truncated at n_max total
// photons (so pair number n <= n_max/2). Amplitudes are real non-negative.
FockState spdc_state(const SpdcParams& params, int n_max = kDefaultNMax);

// Coherent state on the LO path with the configured polarization, carried
// entirely by internal label a: c_n = e^{-nu/2} nu^{n/2} e^{i n phase}/sqrt(n!).
FockState coherent_state(const CoherentParams& params, int n_max = kDefaultNMax);

// zeta(tau) = zeta0 exp(-(4 ln 2) tau^2 / (2 w^2)); |zeta|^2 then has FWHM w.
cplx overlap_at_delay(const OverlapModel& model, double tau_um);

// Coherent state built from the decomposed LO operator
//   a†_lo = zeta a†_(lo,a) + sqrt(1-|zeta|^2) a†_(lo,b),
// i.e. the product of coherent amplitudes zeta*alpha and sqrt(1-|zeta|^2)*alpha
// on the two internal labels.
FockState lo_with_distinguishability(const CoherentParams& params, cplx zeta,
                                     int n_max = kDefaultNMax);

} // namespace entsim::sources
