#pragma once

// Truncated multimode bosonic Fock space on the fixed mode set of the
// experiment: 5 spatial paths x 2 polarizations x 2 internal wave-packet
// labels. States are sparse maps from occupation vectors to complex
// amplitudes; all operations return new states.

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "entsim/errors.hpp"

namespace entsim {

using cplx = std::complex<double>;

enum class Path : std::uint8_t { SignalIn = 0, LoIn = 1, Idler = 2, Out1 = 3, Out2 = 4 };
enum class Pol : std::uint8_t { H = 0, V = 1 };
enum class Label : std::uint8_t { A = 0, B = 1 };

inline constexpr int kPathCount = 5;
inline constexpr int kModeCount = 4 * kPathCount;

// Amplitudes with |amp| below this floor are dropped when states are built.
inline constexpr double kAmplitudeFloor = 1e-15;

// Default total-photon truncation. The largest photon-number sector that
// contributes to the three-fold budget is 4 photons (two pairs).
inline constexpr int kDefaultNMax = 4;

struct Mode {
    Path path{};
    Pol pol{};
    Label label{};

    constexpr int index() const {
        return 4 * static_cast<int>(path) + 2 * static_cast<int>(pol) +
               static_cast<int>(label);
    }
    static constexpr Mode from_index(int i) {
        return Mode{static_cast<Path>(i / 4), static_cast<Pol>((i / 2) % 2),
                    static_cast<Label>(i % 2)};
    }
    friend constexpr bool operator==(Mode a, Mode b) { return a.index() == b.index(); }
    friend constexpr bool operator!=(Mode a, Mode b) { return !(a == b); }
};

std::string mode_name(Mode m);

// Sparse occupation vector: sorted (mode index, count) pairs, counts >= 1.
class Occupation {
  public:
    Occupation() = default;
    Occupation(std::initializer_list<std::pair<Mode, int>> init);

    int count(int mode_index) const;
    int count(Mode m) const { return count(m.index()); }
    int total() const;
    int total_in_path(Path p) const;

    // Returns a copy with `delta` photons added to (removed from) the mode.
    Occupation with(int mode_index, int delta) const;
    Occupation with(Mode m, int delta) const { return with(m.index(), delta); }

    const std::vector<std::pair<std::uint8_t, std::uint8_t>>& slots() const {
        return slots_;
    }
    bool operator==(const Occupation& o) const { return slots_ == o.slots_; }

    std::string str() const;

  private:
    std::vector<std::pair<std::uint8_t, std::uint8_t>> slots_;
};

struct OccupationHash {
    std::size_t operator()(const Occupation& o) const {
        // FNV-1a over the slot bytes
        std::uint64_t h = 1469598103934665603ull;
        for (auto [m, n] : o.slots()) {
            h = (h ^ m) * 1099511628211ull;
            h = (h ^ n) * 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

class FockState {
  public:
    using TermMap = std::unordered_map<Occupation, cplx, OccupationHash>;

    explicit FockState(int n_max = kDefaultNMax);

    static FockState vacuum(int n_max = kDefaultNMax);
    // |1> in the given mode.
    static FockState single(Mode m, int n_max = kDefaultNMax);
    // Basis ket for an arbitrary occupation.
    static FockState basis(const Occupation& occ, int n_max = kDefaultNMax);

    int n_max() const { return n_max_; }
    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    cplx amplitude(const Occupation& occ) const;
    double norm2() const;
    FockState normalized() const;

    // Total squared amplitude dropped so far by truncation/pruning; an upper
    // bound on how much probability the truncated representation is missing.
    double pruned_mass() const { return pruned_mass_; }

    // Accumulate an amplitude; silently drops terms beyond n_max (their mass
    // is added to pruned_mass). Prunes |amp| < kAmplitudeFloor on finalize().
    void accumulate(const Occupation& occ, cplx amp);
    void add_pruned_mass(double m) { pruned_mass_ += m; }
    void finalize();

  private:
    int n_max_;
    TermMap terms_;
    double pruned_mass_ = 0.0;
};

// Tensor product of states on disjoint mode subsets. Terms whose combined
// photon number exceeds n_max are dropped without renormalization.
FockState tensor(const FockState& a, const FockState& b);

// Creation-operator substitution
//   a†_src1 -> u00 a†_dst1 + u01 a†_dst2
//   a†_src2 -> u10 a†_dst1 + u11 a†_dst2
// u must be unitary. Destination modes that differ from the sources must be
// unoccupied in every term of the state.
FockState apply_two_mode_unitary(const FockState& s, Mode src1, Mode src2,
                                 Mode dst1, Mode dst2, const Eigen::Matrix2cd& u);

// In-place variant: destinations coincide with the sources.
FockState apply_two_mode_unitary(const FockState& s, Mode m1, Mode m2,
                                 const Eigen::Matrix2cd& u);

// Threshold post-selection: keep occupation vectors with at least one photon
// in Out1 AND at least one in Out2. Result is unnormalized; its squared norm
// is the post-selection probability.
FockState project_split_occupancy(const FockState& s);

// 4x4 polarization density matrix in the ordered basis (HH, HV, VH, VV).
struct TwoQubitDensityMatrix {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();

    static constexpr double kHermTol = 1e-10;
    static constexpr double kTraceTol = 1e-10;
    static constexpr double kEigTol = -1e-9;

    bool is_valid(std::string* why = nullptr) const;
    // Hermitize, clip negative eigenvalues at 0, renormalize the trace.
    TwoQubitDensityMatrix projected_physical() const;
};

// Index into the (HH, HV, VH, VV) basis.
inline int pol_basis_index(Pol p1, Pol p2) {
    return 2 * static_cast<int>(p1) + static_cast<int>(p2);
}

// Partial trace of a post-selected state (exactly one photon in Out1 and one
// in Out2 per term) over the internal labels and any remaining modes,
// renormalized to unit trace.
TwoQubitDensityMatrix reduce_to_polarization_dm(const FockState& s);

// Small combinatorics helpers shared by the module implementations.
double factorial(int n);
double binomial(int n, int k);

} // namespace entsim
