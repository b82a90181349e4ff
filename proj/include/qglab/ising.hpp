/**
 * Metropolis cellular automaton for the cyclic 1D Ising chain.
 *
 * The cell rule flips a spin unless its whole neighborhood is aligned and
 * the stochastic switch fired; with stay probability p = 1 - e^{-4 beta J}
 * this is exactly Metropolis acceptance min(1, e^{-dE}) for the chain
 * energy E = -sum_k sigma_k sigma_{k+1} (bit 0 -> sigma = +1). The same
 * rule runs either as a classical update or as a measured four-qubit
 * circuit whose outcome law matches the classical one exactly.
 */
#pragma once

#include "qglab/state.hpp"

#include <optional>
#include <vector>

namespace qglab::ising {

/// Cyclic chain of N >= 3 classical spins, stored as bits.
struct IsingChain {
    std::vector<int> spins;

    explicit IsingChain(std::vector<int> bits);
    static IsingChain aligned(int n_cells, int bit = 0);
    static IsingChain random(int n_cells, RngStream& rng);

    int size() const { return static_cast<int>(spins.size()); }
    /// Cyclic access: spin(-1) is the last cell.
    int spin(int k) const;

    double magnetization() const;
    double energy() const;
    double nn_correlation() const;

    bool operator==(const IsingChain&) const = default;
};

struct MetropolisParams {
    double p = 0.0;                  // stay probability on an aligned triple
    std::optional<double> beta_j;    // set when constructed from a temperature

    static MetropolisParams from_p(double p);
    /// p = 1 - e^{-4 beta_j}, beta_j >= 0.
    static MetropolisParams from_beta_j(double beta_j);
};

/// Which cells fire in one step. Activated cells are always pairwise
/// non-adjacent on the cycle; the even/odd variant alternates the two
/// sublattices (requires even N) and the other picks one random cell.
/// Only single-random-cell activation is ergodic: the parallel sublattice
/// update flips every domain-wall cell deterministically, so states like
/// 00110011 cycle forever without ever drawing randomness.
class ActivationSchedule {
public:
    enum class Kind { EvenOddSublattices, SingleRandomCell };

    static ActivationSchedule even_odd();
    static ActivationSchedule single_random_cell();

    Kind kind() const { return kind_; }
    /// Activation set for the next step (sorted). Advances the sublattice
    /// phase / consumes one draw for the random-cell variant.
    std::vector<int> next_cells(int n_cells, RngStream& rng);
    /// Steps per sweep: 2 for even/odd (both sublattices), N for
    /// single-random-cell.
    int steps_per_sweep(int n_cells) const;

private:
    explicit ActivationSchedule(Kind kind) : kind_(kind) {}
    Kind kind_;
    int phase_ = 0;
};

/// The cell tactic: new spin value given the neighborhood and the switch
/// bit. Flips unless all three spins align and the switch fired.
int local_rule(int s_left, int s_k, int s_right, int ancilla);

/// One scheduled step: every activated cell draws its switch with
/// probability p and applies local_rule; everything else is unchanged.
IsingChain classical_step(const IsingChain& chain, const MetropolisParams& params,
                          ActivationSchedule& schedule, RngStream& rng);

/// Quantum form of the cell tactic: builds the four-qubit cell circuit
/// (ancilla driven by exp_not(asin(sqrt(p))), two CNOTs, three NOTs, a
/// triple-controlled NOT) and measures the cell qubit, optionally in a
/// conjugated basis.
int quantum_cell_update(int s_left, int s_k, int s_right, const MetropolisParams& params,
                        RngStream& rng, const SingleQubitGate& basis = gates::identity());

/// Exact P(result = 1) of quantum_cell_update in the computational basis.
double quantum_cell_law(int s_left, int s_k, int s_right, double p);

enum class CellMode { Classical, QuantumCell };

struct ObservablePoint {
    long sweep = 0;
    double magnetization = 0.0;
    double energy = 0.0;
    double nn_correlation = 0.0;
};

/// Mean with a batch-means standard error (autocorrelation-robust).
struct SeriesSummary {
    double mean = 0.0;
    double std_err = 0.0;
};

struct SimulationSeries {
    std::vector<ObservablePoint> points; // one per post-burn-in sweep
    SeriesSummary magnetization;
    SeriesSummary energy;
    SeriesSummary nn_correlation;
    IsingChain final_chain{std::vector<int>{0, 0, 0}};
};

/// Runs `sweeps` full sweeps (even+odd sublattices, or N random single
/// cells) and records observables for every sweep after the first
/// `burn_in`. Requires sweeps > burn_in >= 0.
SimulationSeries simulate(IsingChain chain, const MetropolisParams& params,
                          ActivationSchedule schedule, long sweeps, long burn_in,
                          CellMode mode, RngStream& rng);

/// Transfer-matrix pair correlation of the cyclic chain:
/// <sigma_k sigma_{k+m}> = (t^m + t^{N-m}) / (1 + t^N), t = tanh(beta_j).
double exact_correlation(int n_cells, double beta_j, int distance);

} // namespace qglab::ising
