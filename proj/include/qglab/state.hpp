/**
 * Dense state-vector register with controlled single-qubit application,
 * projective measurement and measurement in a rotated basis.
 *
 * Qubit ordering is little-endian: qubit q is bit q of the amplitude
 * index, so |q1 q0> = |10> lives at index 2. Controls are positive
 * (a gate fires only where every control bit is 1); negated controls are
 * expressed by sandwiching NOT gates.
 */
#pragma once

#include "qglab/gate.hpp"
#include "qglab/rng.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace qglab {

/// A gate bound to a target qubit with zero or more control qubits.
struct GateOp {
    SingleQubitGate gate;
    int target = 0;
    std::vector<int> controls;
};

class PureState {
public:
    /// |0...0> on num_qubits qubits (1 <= num_qubits <= 24).
    explicit PureState(int num_qubits);

    /// Computational basis state |index> on num_qubits qubits.
    static PureState basis(int num_qubits, std::uint64_t index);

    /// State from raw amplitudes; length must be a power of two and the
    /// norm must be 1 within 1e-10.
    static PureState from_amplitudes(std::vector<Amplitude> amps);

    /// Single-qubit state a0|0> + a1|1>.
    static PureState single_qubit(Amplitude a0, Amplitude a1);

    int num_qubits() const { return num_qubits_; }
    std::span<const Amplitude> amplitudes() const { return amps_; }
    Amplitude amplitude(std::uint64_t index) const { return amps_.at(index); }

    double norm_sq() const;

    PureState& apply(const GateOp& op);
    PureState& apply(const SingleQubitGate& g, int target);
    PureState& apply(const SingleQubitGate& g, int target, const std::vector<int>& controls);

    /// Born probability of reading `outcome` (0 or 1) on qubit `target`.
    double probability(int target, int outcome) const;

    /// Projective measurement of one qubit: samples by the Born rule,
    /// collapses and renormalizes in place, returns the observed bit.
    /// Throws std::runtime_error if the state norm has degenerated below
    /// 1e-12 (upstream corruption).
    int measure(int target, RngStream& rng);

    /// Measurement in the basis whose |0> image is basis_gate|0>:
    /// apply(basis^dag), measure, apply(basis) on the survivor branch.
    int measure_in_basis(int target, const SingleQubitGate& basis_gate, RngStream& rng);

private:
    void check_target(int target) const;

    int num_qubits_;
    std::vector<Amplitude> amps_;
};

/// Kronecker product; `low` occupies the low-order qubits of the result.
PureState tensor(const PureState& high, const PureState& low);

} // namespace qglab
