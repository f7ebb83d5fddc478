#include "entsim/sources.hpp"

#include <cmath>

namespace entsim::sources {

namespace {

constexpr Mode kSignal{Path::SignalIn, Pol::V, Label::A};
constexpr Mode kIdler{Path::Idler, Pol::H, Label::A};

// Single-mode coherent amplitude c_n for complex alpha.
cplx coherent_cn(cplx alpha, int n) {
    cplx c = std::exp(-0.5 * std::norm(alpha)) / std::sqrt(factorial(n));
    for (int i = 0; i < n; ++i) c *= alpha;
    return c;
}

} // namespace

FockState spdc_state(const SpdcParams& params, int n_max) {
    params.validate();
    const double p = params.p();
    FockState s(n_max);
    for (int n = 0; 2 * n <= n_max; ++n) {
        const double a_n = std::sqrt(p * std::pow(1.0 - p, n));
        Occupation occ;
        if (n > 0) occ = Occupation{{kSignal, n}, {kIdler, n}};
        s.accumulate(occ, a_n);
    }
    // Mass of the geometric tail beyond the truncation.
    const int pairs_kept = n_max / 2 + 1;
    s.add_pruned_mass(std::pow(1.0 - p, pairs_kept));
    s.finalize();
    return s;
}

FockState coherent_state(const CoherentParams& params, int n_max) {
    params.validate();
    const Mode lo{Path::LoIn, params.pol, Label::A};
    const cplx alpha =
        std::sqrt(params.nu) * std::exp(cplx{0.0, 1.0} * params.phase);
    FockState s(n_max);
    double kept = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        const cplx c = coherent_cn(alpha, n);
        kept += std::norm(c);
        Occupation occ;
        if (n > 0) occ = Occupation{{lo, n}};
        s.accumulate(occ, c);
    }
    s.add_pruned_mass(std::max(0.0, 1.0 - kept));
    s.finalize();
    return s;
}

cplx overlap_at_delay(const OverlapModel& model, double tau_um) {
    model.validate();
    const double w = model.dip_fwhm_um;
    return model.zeta0 *
           std::exp(-(4.0 * M_LN2) * tau_um * tau_um / (2.0 * w * w));
}

FockState lo_with_distinguishability(const CoherentParams& params, cplx zeta,
                                     int n_max) {
    params.validate();
    if (std::abs(zeta) > 1.0 + 1e-12)
        throw InvalidOverlapError("lo decomposition: |zeta| must be <= 1");
    const Mode lo_a{Path::LoIn, params.pol, Label::A};
    const Mode lo_b{Path::LoIn, params.pol, Label::B};
    const cplx alpha =
        std::sqrt(params.nu) * std::exp(cplx{0.0, 1.0} * params.phase);
    const cplx alpha_a = zeta * alpha;
    const double xi = std::sqrt(std::max(0.0, 1.0 - std::norm(zeta)));
    const cplx alpha_b = xi * alpha;

    FockState s(n_max);
    double kept = 0.0;
    for (int na = 0; na <= n_max; ++na) {
        for (int nb = 0; na + nb <= n_max; ++nb) {
            const cplx c = coherent_cn(alpha_a, na) * coherent_cn(alpha_b, nb);
            kept += std::norm(c);
            Occupation occ;
            if (na > 0) occ = occ.with(lo_a, na);
            if (nb > 0) occ = occ.with(lo_b, nb);
            s.accumulate(occ, c);
        }
    }
    s.add_pruned_mass(std::max(0.0, 1.0 - kept));
    s.finalize();
    return s;
}

} // namespace entsim::sources
