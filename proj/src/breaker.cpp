#include "qglab/games/breaker.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qglab::games {

namespace {
constexpr double kPi = std::numbers::pi;
} // namespace

BreakerKind BreakerKind::classical_switch(double prob_not) {
    if (prob_not < 0.0 || prob_not > 1.0)
        throw std::invalid_argument("classical_switch: prob_not must be in [0, 1]");
    return {Kind::ClassicalSwitch, prob_not};
}

BreakerKind BreakerKind::qutrojan() { return {Kind::Qutrojan, 0.0}; }

TesterResult TesterResult::exploded_at(int round) {
    return {Outcome::Exploded, round, 0, round - 1};
}

TesterResult TesterResult::verdict_bit(int bit, int rounds) {
    return {Outcome::Verdict, 0, bit, rounds};
}

double NewcombDistribution::exact_marginal_lower(int bit) const {
    return exact[0 + bit] + exact[2 + bit];
}

double NewcombDistribution::exact_marginal_upper(int bit) const {
    return exact[2 * bit] + exact[2 * bit + 1];
}

namespace {

// Qubit 0 = lower (measured strategy), qubit 1 = upper (tactic).
PureState newcomb_branch(const PureState& tactic, bool switch_fires, bool qutrojan) {
    PureState st = tensor(tactic, PureState(1));
    if (qutrojan) st.apply(gates::hadamard(), 0);
    if (switch_fires) st.apply(gates::not_gate(), 0);
    st.apply(gates::not_gate(), 0, {1}); // the alliance CNOT
    if (qutrojan) st.apply(gates::hadamard(), 0);
    return st;
}

} // namespace

NewcombDistribution run_newcomb(const PureState& tactic, const BreakerKind& breaker,
                                std::uint64_t trials, RngStream& rng) {
    if (tactic.num_qubits() != 1)
        throw std::invalid_argument("run_newcomb: tactic must be a single-qubit state");
    if (trials < 1) throw std::invalid_argument("run_newcomb: trials must be >= 1");

    const bool qutrojan = breaker.kind == BreakerKind::Kind::Qutrojan;
    NewcombDistribution dist;
    dist.trials = trials;

    // Exact joint law: Born weights of the final two-qubit state, averaged
    // over the switch draw for the classical breaker.
    auto accumulate_exact = [&](bool fires, double weight) {
        PureState st = newcomb_branch(tactic, fires, qutrojan);
        auto amps = st.amplitudes();
        for (int upper = 0; upper < 2; ++upper)
            for (int lower = 0; lower < 2; ++lower)
                dist.exact[upper * 2 + lower] += weight * std::norm(amps[2 * upper + lower]);
    };
    if (qutrojan) {
        accumulate_exact(false, 1.0);
    } else {
        accumulate_exact(false, 1.0 - breaker.prob_not);
        accumulate_exact(true, breaker.prob_not);
    }

    for (std::uint64_t t = 0; t < trials; ++t) {
        const bool fires = !qutrojan && rng.bernoulli(breaker.prob_not);
        PureState st = newcomb_branch(tactic, fires, qutrojan);
        const int lower = st.measure(0, rng);
        const int upper = st.measure(1, rng);
        ++dist.counts[upper * 2 + lower];
    }
    for (int i = 0; i < 4; ++i)
        dist.freq[i] = static_cast<double>(dist.counts[i]) / static_cast<double>(trials);
    return dist;
}

TesterResult run_ev_breaker(int n, int first_qubit, RngStream& rng) {
    if (n < 1) throw std::invalid_argument("run_ev_breaker: n must be >= 1");
    if (first_qubit != 0 && first_qubit != 1)
        throw std::invalid_argument("run_ev_breaker: first_qubit must be 0 or 1");

    // Qubit 0 = measured ancilla, qubit 1 = switching-off strategy,
    // qubit 2 = the inspected first qubit. The ancilla collapses to |0>
    // after each surviving round, which makes reuse equivalent to a fresh
    // one per round.
    PureState st = PureState::basis(3, static_cast<std::uint64_t>(first_qubit) << 2);
    const SingleQubitGate step = gates::root_not(n);
    for (int r = 1; r <= n; ++r) {
        st.apply(step, 1);
        st.apply(gates::not_gate(), 0, {1, 2});
        if (st.measure(0, rng) == 1) return TesterResult::exploded_at(r);
    }
    st.apply(gates::not_gate(), 1);
    return TesterResult::verdict_bit(st.measure(1, rng), n);
}

double zeno_survival(int n) {
    if (n < 1) throw std::invalid_argument("zeno_survival: n must be >= 1");
    return std::pow(std::cos(kPi / (2.0 * n)), 2.0 * n);
}

namespace {

// Shared loop of the Zeno and supply-demand testers: qubit 0 = probe,
// qubit 1 = bomb qubit (reused across rounds, it collapses back to |0>
// on every survival).
TesterResult run_bomb_loop(int n, const BombState& bomb, const SingleQubitGate& stage,
                           const SingleQubitGate& final_gate, RngStream& rng) {
    PureState st(2);
    for (int r = 1; r <= n; ++r) {
        st.apply(stage, 0);
        if (bomb.working) {
            st.apply(gates::not_gate(), 1, {0});
            if (st.measure(1, rng) == 1) return TesterResult::exploded_at(r);
        }
    }
    st.apply(final_gate, 0);
    return TesterResult::verdict_bit(st.measure(0, rng), n);
}

} // namespace

TesterResult run_bomb_tester_zeno(int n, const BombState& bomb, RngStream& rng) {
    if (n < 1) throw std::invalid_argument("run_bomb_tester_zeno: n must be >= 1");
    return run_bomb_loop(n, bomb, gates::root_not(n), gates::not_gate(), rng);
}

int AntiZenoVerdict::verdict() const {
    if (p_verdict_one > 1.0 - 1e-9) return 1;
    if (p_verdict_one < 1e-9) return 0;
    throw std::logic_error("AntiZenoVerdict: verdict law is not deterministic");
}

AntiZenoVerdict run_bomb_tester_antizeno(int n, double alpha, const BombState& bomb) {
    if (n < 1) throw std::invalid_argument("run_bomb_tester_antizeno: n must be >= 1");
    const SingleQubitGate stage = gates::v_gate(alpha, kPi / (2.0 * n));
    const SingleQubitGate kick = gates::exp_not(kPi / (2.0 * n));
    const SingleQubitGate spacer = gates::not_pow(3.0);
    SingleQubitGate total = gates::identity();
    for (int s = 1; s <= n; ++s) {
        total = compose(stage, total);
        if (bomb.working) total = compose(kick, total);
        if (s < n) total = compose(spacer, total);
    }
    total = compose(gates::not_gate(), total);
    PureState probe(1);
    probe.apply(total, 0);
    return {probe.probability(0, 1)};
}

bool in_exp_not_class(const SingleQubitGate& g, double tol) {
    if (tol <= 0.0) throw std::invalid_argument("in_exp_not_class: tol must be > 0");
    // Hilbert-Schmidt components over the orthogonal basis
    // {I, NOT, H*NOT*H, NOT*H*NOT*H}; membership in exp(NOT*phi) up to a
    // global phase means everything outside span{I, NOT} vanishes. The
    // component moduli are phase-invariant, so no phase stripping is
    // needed.
    auto component = [&](const SingleQubitGate& basis) {
        SingleQubitGate p = compose(adjoint(basis), g);
        return 0.5 * (p.m00 + p.m11);
    };
    const SingleQubitGate hnh =
        compose(gates::hadamard(), compose(gates::not_gate(), gates::hadamard()));
    const Amplitude c2 = component(hnh);
    const Amplitude c3 = component(compose(gates::not_gate(), hnh));
    return std::sqrt(std::norm(c2) + std::norm(c3)) <= tol;
}

TesterResult run_supply_demand(int n, const BombState& bomb, RngStream& rng) {
    if (n < 1) throw std::invalid_argument("run_supply_demand: n must be >= 1");
    return run_bomb_loop(n, bomb, gates::exp_h(kPi / (2.0 * n)), gates::hadamard(), rng);
}

double supply_demand_survival(int n) {
    if (n < 1) throw std::invalid_argument("supply_demand_survival: n must be >= 1");
    const double s = std::sin(kPi / (2.0 * n));
    return std::pow(1.0 - 0.5 * s * s, static_cast<double>(n));
}

} // namespace qglab::games
