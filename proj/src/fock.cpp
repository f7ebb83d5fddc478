#include "entsim/fock.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace entsim {

namespace {

constexpr int kMaxPhotons = 16;

const std::array<double, kMaxPhotons + 1>& factorial_table() {
    static const std::array<double, kMaxPhotons + 1> table = [] {
        std::array<double, kMaxPhotons + 1> t{};
        t[0] = 1.0;
        for (int i = 1; i <= kMaxPhotons; ++i) t[i] = t[i - 1] * i;
        return t;
    }();
    return table;
}

} // namespace

double factorial(int n) {
    if (n < 0 || n > kMaxPhotons) throw InvalidParameterError("factorial: out of range");
    return factorial_table()[n];
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    return factorial(n) / (factorial(k) * factorial(n - k));
}

std::string mode_name(Mode m) {
    static const char* paths[] = {"signal-in", "lo-in", "idler", "out1", "out2"};
    std::string s = paths[static_cast<int>(m.path)];
    s += (m.pol == Pol::H) ? ":H" : ":V";
    s += (m.label == Label::A) ? ":a" : ":b";
    return s;
}

Occupation::Occupation(std::initializer_list<std::pair<Mode, int>> init) {
    for (const auto& [m, n] : init) {
        if (n < 0) throw InvalidCompositionError("occupation counts must be >= 0");
        if (n > 0) *this = with(m.index(), n);
    }
}

int Occupation::count(int mode_index) const {
    for (auto [m, n] : slots_)
        if (m == mode_index) return n;
    return 0;
}

int Occupation::total() const {
    int t = 0;
    for (auto [m, n] : slots_) t += n;
    return t;
}

int Occupation::total_in_path(Path p) const {
    const int lo = 4 * static_cast<int>(p), hi = lo + 3;
    int t = 0;
    for (auto [m, n] : slots_)
        if (m >= lo && m <= hi) t += n;
    return t;
}

Occupation Occupation::with(int mode_index, int delta) const {
    Occupation out;
    out.slots_.reserve(slots_.size() + 1);
    bool placed = false;
    for (auto [m, n] : slots_) {
        if (m == mode_index) {
            const int nn = n + delta;
            if (nn < 0) throw InvalidCompositionError("occupation went negative");
            if (nn > 0) out.slots_.emplace_back(m, static_cast<std::uint8_t>(nn));
            placed = true;
        } else {
            if (!placed && m > mode_index && delta != 0) {
                if (delta < 0) throw InvalidCompositionError("occupation went negative");
                out.slots_.emplace_back(static_cast<std::uint8_t>(mode_index),
                                        static_cast<std::uint8_t>(delta));
                placed = true;
            }
            out.slots_.emplace_back(m, n);
        }
    }
    if (!placed && delta != 0) {
        if (delta < 0) throw InvalidCompositionError("occupation went negative");
        out.slots_.emplace_back(static_cast<std::uint8_t>(mode_index),
                                static_cast<std::uint8_t>(delta));
    }
    return out;
}

std::string Occupation::str() const {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (auto [m, n] : slots_) {
        if (!first) os << ", ";
        first = false;
        os << mode_name(Mode::from_index(m)) << ":" << int(n);
    }
    os << "}";
    return os.str();
}

FockState::FockState(int n_max) : n_max_(n_max) {
    if (n_max < 0) throw InvalidParameterError("n_max must be >= 0");
    if (n_max > kMaxPhotons) throw InvalidParameterError("n_max too large");
}

FockState FockState::vacuum(int n_max) {
    FockState s(n_max);
    s.accumulate(Occupation{}, 1.0);
    return s;
}

FockState FockState::single(Mode m, int n_max) {
    return basis(Occupation{{m, 1}}, n_max);
}

FockState FockState::basis(const Occupation& occ, int n_max) {
    FockState s(n_max);
    s.accumulate(occ, 1.0);
    s.finalize();
    return s;
}

cplx FockState::amplitude(const Occupation& occ) const {
    auto it = terms_.find(occ);
    return it == terms_.end() ? cplx{0.0, 0.0} : it->second;
}

double FockState::norm2() const {
    double n = 0.0;
    for (const auto& [occ, amp] : terms_) n += std::norm(amp);
    return n;
}

FockState FockState::normalized() const {
    const double n2 = norm2();
    if (n2 <= 0.0) throw DegenerateStateError("cannot normalize a zero-norm state");
    FockState out(n_max_);
    const double inv = 1.0 / std::sqrt(n2);
    for (const auto& [occ, amp] : terms_) out.terms_.emplace(occ, amp * inv);
    out.pruned_mass_ = pruned_mass_ / n2;
    return out;
}

void FockState::accumulate(const Occupation& occ, cplx amp) {
    if (occ.total() > n_max_) {
        pruned_mass_ += std::norm(amp);
        return;
    }
    auto [it, inserted] = terms_.emplace(occ, amp);
    if (!inserted) it->second += amp;
}

void FockState::finalize() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (std::abs(it->second) < kAmplitudeFloor) {
            pruned_mass_ += std::norm(it->second);
            it = terms_.erase(it);
        } else {
            ++it;
        }
    }
}

FockState tensor(const FockState& a, const FockState& b) {
    // Mode supports must be disjoint for the product to be a valid state.
    std::array<bool, kModeCount> used_a{};
    for (const auto& [occ, amp] : a.terms())
        for (auto [m, n] : occ.slots()) used_a[m] = true;
    for (const auto& [occ, amp] : b.terms())
        for (auto [m, n] : occ.slots())
            if (used_a[m])
                throw InvalidCompositionError("tensor: states share mode " +
                                              mode_name(Mode::from_index(m)));

    FockState out(std::min(a.n_max(), b.n_max()));
    out.add_pruned_mass(a.pruned_mass() * b.norm2() + b.pruned_mass() * a.norm2());
    for (const auto& [oa, va] : a.terms()) {
        for (const auto& [ob, vb] : b.terms()) {
            Occupation occ = oa;
            for (auto [m, n] : ob.slots()) occ = occ.with(m, n);
            out.accumulate(occ, va * vb);
        }
    }
    out.finalize();
    return out;
}

namespace {

void check_unitary(const Eigen::Matrix2cd& u) {
    const Eigen::Matrix2cd d = u.adjoint() * u - Eigen::Matrix2cd::Identity();
    if (d.cwiseAbs().maxCoeff() > 1e-10)
        throw InvalidElementError("two-mode transform is not unitary");
}

// std::pow(cplx, 0) is NaN for a zero base; photon counts are small anyway.
cplx ipow(cplx b, int e) {
    cplx r{1.0, 0.0};
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

} // namespace

FockState apply_two_mode_unitary(const FockState& s, Mode src1, Mode src2,
                                 Mode dst1, Mode dst2, const Eigen::Matrix2cd& u) {
    if (src1 == src2 || dst1 == dst2)
        throw InvalidCompositionError("two-mode transform needs distinct modes");
    check_unitary(u);

    const int s1 = src1.index(), s2 = src2.index();
    const int d1 = dst1.index(), d2 = dst2.index();
    const bool d1_fresh = (d1 != s1 && d1 != s2);
    const bool d2_fresh = (d2 != s1 && d2 != s2);

    FockState out(s.n_max());
    out.add_pruned_mass(s.pruned_mass());
    for (const auto& [occ, amp] : s.terms()) {
        if ((d1_fresh && occ.count(d1) > 0) || (d2_fresh && occ.count(d2) > 0))
            throw InvalidCompositionError(
                "two-mode transform: destination mode already occupied");
        const int k1 = occ.count(s1), k2 = occ.count(s2);
        if (k1 == 0 && k2 == 0) {
            out.accumulate(occ, amp);
            continue;
        }
        Occupation base = occ;
        if (k1 > 0) base = base.with(s1, -k1);
        if (k2 > 0) base = base.with(s2, -k2);
        // Polynomial coefficient of the creation-operator monomial.
        const cplx c0 = amp / std::sqrt(factorial(k1) * factorial(k2));
        for (int i = 0; i <= k1; ++i) {
            for (int j = 0; j <= k2; ++j) {
                cplx c = c0 * binomial(k1, i) * binomial(k2, j);
                c *= ipow(u(0, 0), i) * ipow(u(0, 1), k1 - i);
                c *= ipow(u(1, 0), j) * ipow(u(1, 1), k2 - j);
                const int n1 = i + j;
                const int n2 = (k1 - i) + (k2 - j);
                Occupation dst = base;
                if (n1 > 0) dst = dst.with(d1, n1);
                if (n2 > 0) dst = dst.with(d2, n2);
                out.accumulate(dst, c * std::sqrt(factorial(n1) * factorial(n2)));
            }
        }
    }
    out.finalize();
    return out;
}

FockState apply_two_mode_unitary(const FockState& s, Mode m1, Mode m2,
                                 const Eigen::Matrix2cd& u) {
    return apply_two_mode_unitary(s, m1, m2, m1, m2, u);
}

FockState project_split_occupancy(const FockState& s) {
    FockState out(s.n_max());
    out.add_pruned_mass(s.pruned_mass());
    for (const auto& [occ, amp] : s.terms())
        if (occ.total_in_path(Path::Out1) >= 1 && occ.total_in_path(Path::Out2) >= 1)
            out.accumulate(occ, amp);
    out.finalize();
    return out;
}

bool TwoQubitDensityMatrix::is_valid(std::string* why) const {
    const auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kHermTol)
        return fail("not Hermitian");
    if (std::abs(m.trace() - cplx{1.0, 0.0}) > kTraceTol)
        return fail("trace != 1");
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(0.5 * (m + m.adjoint()));
    if (es.eigenvalues().minCoeff() < kEigTol)
        return fail("negative eigenvalue");
    return true;
}

TwoQubitDensityMatrix TwoQubitDensityMatrix::projected_physical() const {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(0.5 * (m + m.adjoint()));
    Eigen::Vector4d ev = es.eigenvalues().cwiseMax(0.0);
    const double tr = ev.sum();
    if (tr <= 0.0) throw DegenerateStateError("density matrix has no positive weight");
    TwoQubitDensityMatrix out;
    out.m = es.eigenvectors() * (ev / tr).asDiagonal() * es.eigenvectors().adjoint();
    return out;
}

TwoQubitDensityMatrix reduce_to_polarization_dm(const FockState& s) {
    // Environment key: internal labels of the two output photons plus the
    // occupation of everything that is not an output path.
    struct Env {
        Label l1, l2;
        Occupation rest;
        bool operator==(const Env& e) const {
            return l1 == e.l1 && l2 == e.l2 && rest == e.rest;
        }
    };
    struct EnvHash {
        std::size_t operator()(const Env& e) const {
            return OccupationHash{}(e.rest) * 4 + 2 * static_cast<int>(e.l1) +
                   static_cast<int>(e.l2);
        }
    };

    std::unordered_map<Env, Eigen::Vector4cd, EnvHash> groups;
    for (const auto& [occ, amp] : s.terms()) {
        if (occ.total_in_path(Path::Out1) != 1 || occ.total_in_path(Path::Out2) != 1)
            throw InvalidCompositionError(
                "polarization reduction needs exactly one photon per output, got " +
                occ.str());
        Pol p1{}, p2{};
        Label l1{}, l2{};
        Occupation rest;
        for (auto [mi, n] : occ.slots()) {
            const Mode m = Mode::from_index(mi);
            if (m.path == Path::Out1) {
                p1 = m.pol;
                l1 = m.label;
            } else if (m.path == Path::Out2) {
                p2 = m.pol;
                l2 = m.label;
            } else {
                rest = rest.with(mi, n);
            }
        }
        auto [it, inserted] = groups.emplace(Env{l1, l2, rest}, Eigen::Vector4cd::Zero());
        it->second(pol_basis_index(p1, p2)) += amp;
    }

    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    for (const auto& [env, vec] : groups) rho += vec * vec.adjoint();
    const double tr = rho.trace().real();
    if (tr <= 0.0) throw DegenerateStateError("polarization reduction of a zero-norm state");
    TwoQubitDensityMatrix out;
    out.m = rho / tr;
    return out;
}

} // namespace entsim
