#include "qglab/state.hpp"

#include <cmath>
#include <stdexcept>

namespace qglab {

namespace {
constexpr double kNormTol = 1e-10;
constexpr double kDegenerateNormSq = 1e-12;
} // namespace

PureState::PureState(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1 || num_qubits > 24)
        throw std::out_of_range("PureState: num_qubits must be in [1, 24]");
    amps_.assign(std::uint64_t{1} << num_qubits, Amplitude{0.0, 0.0});
    amps_[0] = 1.0;
}

PureState PureState::basis(int num_qubits, std::uint64_t index) {
    PureState s(num_qubits);
    if (index >= s.amps_.size()) throw std::out_of_range("PureState::basis: index out of range");
    s.amps_[0] = 0.0;
    s.amps_[index] = 1.0;
    return s;
}

PureState PureState::from_amplitudes(std::vector<Amplitude> amps) {
    int m = 0;
    while ((std::uint64_t{1} << m) < amps.size()) ++m;
    if (amps.empty() || (std::uint64_t{1} << m) != amps.size())
        throw std::invalid_argument("PureState: amplitude count must be a power of two");
    PureState s(std::max(m, 1));
    s.amps_ = std::move(amps);
    double n = s.norm_sq();
    if (std::abs(n - 1.0) > kNormTol)
        throw std::invalid_argument("PureState: amplitudes are not normalized");
    return s;
}

PureState PureState::single_qubit(Amplitude a0, Amplitude a1) {
    return from_amplitudes({a0, a1});
}

double PureState::norm_sq() const {
    double n = 0.0;
    for (const Amplitude& a : amps_) n += std::norm(a);
    return n;
}

void PureState::check_target(int target) const {
    if (target < 0 || target >= num_qubits_)
        throw std::out_of_range("PureState: qubit index out of range");
}

PureState& PureState::apply(const GateOp& op) {
    check_target(op.target);
    std::uint64_t control_mask = 0;
    for (int c : op.controls) {
        check_target(c);
        if (c == op.target)
            throw std::invalid_argument("PureState::apply: target cannot also be a control");
        control_mask |= std::uint64_t{1} << c;
    }
    const std::uint64_t target_bit = std::uint64_t{1} << op.target;
    const SingleQubitGate& g = op.gate;
    const std::uint64_t dim = amps_.size();
    for (std::uint64_t i = 0; i < dim; ++i) {
        if (i & target_bit) continue;
        if ((i & control_mask) != control_mask) continue;
        const std::uint64_t j = i | target_bit;
        const Amplitude a0 = amps_[i];
        const Amplitude a1 = amps_[j];
        amps_[i] = g.m00 * a0 + g.m01 * a1;
        amps_[j] = g.m10 * a0 + g.m11 * a1;
    }
    return *this;
}

PureState& PureState::apply(const SingleQubitGate& g, int target) {
    return apply(GateOp{g, target, {}});
}

PureState& PureState::apply(const SingleQubitGate& g, int target, const std::vector<int>& controls) {
    return apply(GateOp{g, target, controls});
}

double PureState::probability(int target, int outcome) const {
    check_target(target);
    if (outcome != 0 && outcome != 1)
        throw std::invalid_argument("PureState::probability: outcome must be 0 or 1");
    const std::uint64_t target_bit = std::uint64_t{1} << target;
    double p = 0.0;
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
        const int bit = (i & target_bit) ? 1 : 0;
        if (bit == outcome) p += std::norm(amps_[i]);
    }
    return p;
}

int PureState::measure(int target, RngStream& rng) {
    check_target(target);
    const double total = norm_sq();
    if (total < kDegenerateNormSq)
        throw std::runtime_error("PureState::measure: state norm degenerated");
    const double p1 = probability(target, 1) / total;
    const int outcome = rng.next_double() < p1 ? 1 : 0;
    const double p_out = outcome == 1 ? p1 * total : total - p1 * total;
    const double inv = 1.0 / std::sqrt(p_out);
    const std::uint64_t target_bit = std::uint64_t{1} << target;
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
        const int bit = (i & target_bit) ? 1 : 0;
        amps_[i] = bit == outcome ? amps_[i] * inv : Amplitude{0.0, 0.0};
    }
    return outcome;
}

int PureState::measure_in_basis(int target, const SingleQubitGate& basis_gate, RngStream& rng) {
    apply(adjoint(basis_gate), target);
    const int outcome = measure(target, rng);
    apply(basis_gate, target);
    return outcome;
}

PureState tensor(const PureState& high, const PureState& low) {
    const auto ha = high.amplitudes();
    const auto la = low.amplitudes();
    std::vector<Amplitude> out(ha.size() * la.size());
    for (std::size_t h = 0; h < ha.size(); ++h)
        for (std::size_t l = 0; l < la.size(); ++l)
            out[(h << low.num_qubits()) | l] = ha[h] * la[l];
    return PureState::from_amplitudes(std::move(out));
}

} // namespace qglab
