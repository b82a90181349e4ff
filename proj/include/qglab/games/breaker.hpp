/**
 * Circuit breakers and bomb testers.
 *
 * All runners share the same skeleton: a probe qubit is unblocked in n
 * small steps, a measuring subsystem may fire ("explode") at each step,
 * and a final one-qubit gate converts the surviving probe into a verdict
 * bit. The Zeno tester freezes the probe through repeated projection, the
 * anti-Zeno variant advances a cumulative phase instead, and the
 * supply-demand switch rotates along the Hadamard axis.
 */
#pragma once

#include "qglab/state.hpp"

#include <array>
#include <cstdint>

namespace qglab::games {

/// The switch guarding the measured strategy: either a classical random
/// I/NOT draw or the Hadamard-pair jammer.
struct BreakerKind {
    enum class Kind { ClassicalSwitch, Qutrojan };
    Kind kind = Kind::ClassicalSwitch;
    double prob_not = 0.5;

    static BreakerKind classical_switch(double prob_not = 0.5);
    static BreakerKind qutrojan();
};

struct BombState {
    bool working = true;
};

/// Outcome of a breaker/tester run: either the measuring subsystem fired
/// at some round, or the full schedule ran and produced a verdict bit.
/// rounds_completed counts fully survived rounds (at_round - 1 when
/// exploded, n otherwise).
struct TesterResult {
    enum class Outcome { Exploded, Verdict };
    Outcome outcome = Outcome::Verdict;
    int at_round = 0;
    int verdict = 0;
    int rounds_completed = 0;

    bool exploded() const { return outcome == Outcome::Exploded; }
    static TesterResult exploded_at(int round);
    static TesterResult verdict_bit(int bit, int rounds);
};

/// Joint outcome statistics of the two-qubit switch game. Outcomes are
/// indexed upper*2 + lower.
struct NewcombDistribution {
    std::array<std::uint64_t, 4> counts{};
    std::array<double, 4> freq{};
    std::array<double, 4> exact{};
    std::uint64_t trials = 0;

    double exact_marginal_lower(int bit) const;
    double exact_marginal_upper(int bit) const;
};

/// Runs the two-qubit switch circuit `trials` times and also evaluates its
/// exact joint outcome law. Circuit: lower qubit starts |0>; the breaker
/// acts on the lower line (classical switch: NOT with prob_not; qutrojan:
/// H before and after the coupling); CNOT couples upper -> lower; both
/// qubits are measured.
NewcombDistribution run_newcomb(const PureState& tactic, const BreakerKind& breaker,
                                std::uint64_t trials, RngStream& rng);

/// Gradual unblocking of the switching-off strategy. Round r = 1..n:
/// root_not(n) on the switch qubit, Toffoli(first, switch -> ancilla),
/// measure ancilla (1 explodes). After n rounds: NOT on the switch qubit,
/// measure it as the verdict.
TesterResult run_ev_breaker(int n, int first_qubit, RngStream& rng);

/// Survival probability of the n-step Zeno schedule: cos^{2n}(pi/2n).
double zeno_survival(int n);

/// Bomb tester: round r applies root_not(n) to the probe; a working bomb
/// couples CNOT(probe -> bomb qubit) and measures the bomb qubit
/// (1 explodes); a damaged bomb does nothing. Final NOT then measure.
TesterResult run_bomb_tester_zeno(int n, const BombState& bomb, RngStream& rng);

/// Exact verdict law of the anti-Zeno tester (unitary phase-kick model;
/// no explosion events, hence no sampling).
struct AntiZenoVerdict {
    double p_verdict_one = 0.0;

    /// The deterministic verdict; throws std::logic_error unless the law
    /// is within 1e-9 of a point mass.
    int verdict() const;
};

/// Anti-Zeno tester: the probe starts |0>; stages s = 1..n each apply
/// v_gate(alpha, pi/2n), a working bomb adds a phase kick exp_not(pi/2n)
/// per stage, stages are interleaved with NOT^3 (n-1 times); final NOT,
/// then the verdict law of the computational measurement is returned.
AntiZenoVerdict run_bomb_tester_antizeno(int n, double alpha, const BombState& bomb);

/// True iff g lies in the class exp(NOT*phi) up to global phase.
bool in_exp_not_class(const SingleQubitGate& g, double tol);

/// Supply-demand switch: same loop as the Zeno tester with stage gate
/// exp_h(pi/2n) and a final H before the verdict measurement.
TesterResult run_supply_demand(int n, const BombState& bomb, RngStream& rng);

/// Survival probability (1 - sin^2(pi/2n)/2)^n of the supply-demand loop
/// with a working bomb.
double supply_demand_survival(int n);

} // namespace qglab::games
