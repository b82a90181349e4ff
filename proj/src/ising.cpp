#include "qglab/ising.hpp"

#include <cmath>
#include <stdexcept>

namespace qglab::ising {

IsingChain::IsingChain(std::vector<int> bits) : spins(std::move(bits)) {
    if (spins.size() < 3)
        throw std::invalid_argument("IsingChain: need at least 3 cells");
    for (int s : spins)
        if (s != 0 && s != 1) throw std::invalid_argument("IsingChain: spins must be bits");
}

IsingChain IsingChain::aligned(int n_cells, int bit) {
    if (n_cells < 3) throw std::invalid_argument("IsingChain: need at least 3 cells");
    return IsingChain(std::vector<int>(n_cells, bit));
}

IsingChain IsingChain::random(int n_cells, RngStream& rng) {
    if (n_cells < 3) throw std::invalid_argument("IsingChain: need at least 3 cells");
    std::vector<int> bits(n_cells);
    for (int& b : bits) b = static_cast<int>(rng.next_below(2));
    return IsingChain(std::move(bits));
}

int IsingChain::spin(int k) const {
    const int n = size();
    return spins[static_cast<std::size_t>(((k % n) + n) % n)];
}

double IsingChain::magnetization() const {
    double m = 0.0;
    for (int b : spins) m += 1.0 - 2.0 * b;
    return m / static_cast<double>(size());
}

double IsingChain::energy() const {
    double e = 0.0;
    const int n = size();
    for (int k = 0; k < n; ++k) {
        const double sk = 1.0 - 2.0 * spins[k];
        const double sk1 = 1.0 - 2.0 * spin(k + 1);
        e -= sk * sk1;
    }
    return e;
}

double IsingChain::nn_correlation() const { return -energy() / static_cast<double>(size()); }

MetropolisParams MetropolisParams::from_p(double p) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("MetropolisParams: p must be in [0, 1]");
    return {p, std::nullopt};
}

MetropolisParams MetropolisParams::from_beta_j(double beta_j) {
    if (beta_j < 0.0) throw std::invalid_argument("MetropolisParams: beta_j must be >= 0");
    return {1.0 - std::exp(-4.0 * beta_j), beta_j};
}

ActivationSchedule ActivationSchedule::even_odd() {
    return ActivationSchedule(Kind::EvenOddSublattices);
}

ActivationSchedule ActivationSchedule::single_random_cell() {
    return ActivationSchedule(Kind::SingleRandomCell);
}

std::vector<int> ActivationSchedule::next_cells(int n_cells, RngStream& rng) {
    if (kind_ == Kind::SingleRandomCell)
        return {static_cast<int>(rng.next_below(static_cast<std::uint32_t>(n_cells)))};
    if (n_cells % 2 != 0)
        throw std::invalid_argument("ActivationSchedule: even/odd sublattices need even N");
    std::vector<int> cells;
    cells.reserve(static_cast<std::size_t>(n_cells) / 2);
    for (int k = phase_; k < n_cells; k += 2) cells.push_back(k);
    phase_ ^= 1;
    return cells;
}

int ActivationSchedule::steps_per_sweep(int n_cells) const {
    return kind_ == Kind::EvenOddSublattices ? 2 : n_cells;
}

int local_rule(int s_left, int s_k, int s_right, int ancilla) {
    const int aligned = (s_left == s_right && s_k == s_right) ? 1 : 0;
    return (1 - s_k) ^ (ancilla & aligned);
}

namespace {

void check_non_adjacent(const std::vector<int>& cells, int n_cells) {
    for (std::size_t i = 0; i < cells.size(); ++i)
        for (std::size_t j = i + 1; j < cells.size(); ++j) {
            const int d = std::abs(cells[i] - cells[j]);
            if (d == 1 || d == n_cells - 1)
                throw std::logic_error("activation set contains adjacent cells");
        }
}

IsingChain step_cells(const IsingChain& chain, const MetropolisParams& params,
                      const std::vector<int>& cells, CellMode mode, RngStream& rng) {
    check_non_adjacent(cells, chain.size());
    IsingChain out = chain;
    for (int k : cells) {
        if (mode == CellMode::Classical) {
            const int ancilla = rng.bernoulli(params.p) ? 1 : 0;
            out.spins[k] = local_rule(chain.spin(k - 1), chain.spin(k), chain.spin(k + 1), ancilla);
        } else {
            out.spins[k] =
                quantum_cell_update(chain.spin(k - 1), chain.spin(k), chain.spin(k + 1), params, rng);
        }
    }
    return out;
}

PureState build_cell_circuit(int s_left, int s_k, int s_right, double p) {
    // q0 = ancilla, q1 = left neighbor, q2 = right neighbor, q3 = cell
    const std::uint64_t idx = (static_cast<std::uint64_t>(s_k) << 3) |
                              (static_cast<std::uint64_t>(s_right) << 2) |
                              (static_cast<std::uint64_t>(s_left) << 1);
    PureState st = PureState::basis(4, idx);
    st.apply(gates::not_gate(), 1, {2});
    st.apply(gates::not_gate(), 2, {3});
    st.apply(gates::exp_not(std::asin(std::sqrt(p))), 0);
    st.apply(gates::not_gate(), 1);
    st.apply(gates::not_gate(), 2);
    st.apply(gates::not_gate(), 3);
    st.apply(gates::not_gate(), 3, {0, 1, 2});
    return st;
}

void check_bit(int b, const char* what) {
    if (b != 0 && b != 1) throw std::invalid_argument(std::string("expected a bit for ") + what);
}

} // namespace

IsingChain classical_step(const IsingChain& chain, const MetropolisParams& params,
                          ActivationSchedule& schedule, RngStream& rng) {
    return step_cells(chain, params, schedule.next_cells(chain.size(), rng), CellMode::Classical,
                      rng);
}

int quantum_cell_update(int s_left, int s_k, int s_right, const MetropolisParams& params,
                        RngStream& rng, const SingleQubitGate& basis) {
    check_bit(s_left, "s_left");
    check_bit(s_k, "s_k");
    check_bit(s_right, "s_right");
    PureState st = build_cell_circuit(s_left, s_k, s_right, params.p);
    return st.measure_in_basis(3, basis, rng);
}

double quantum_cell_law(int s_left, int s_k, int s_right, double p) {
    check_bit(s_left, "s_left");
    check_bit(s_k, "s_k");
    check_bit(s_right, "s_right");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("quantum_cell_law: p must be in [0, 1]");
    return build_cell_circuit(s_left, s_k, s_right, p).probability(3, 1);
}

namespace {

SeriesSummary summarize(const std::vector<double>& xs) {
    SeriesSummary s;
    if (xs.empty()) return s;
    double sum = 0.0;
    for (double x : xs) sum += x;
    s.mean = sum / static_cast<double>(xs.size());

    // Batch means: ~100 equal bins; bin averages decorrelate the series.
    const std::size_t n_bins = std::min<std::size_t>(100, xs.size());
    const std::size_t bin_size = xs.size() / n_bins;
    double var = 0.0;
    for (std::size_t b = 0; b < n_bins; ++b) {
        double bin_sum = 0.0;
        for (std::size_t i = b * bin_size; i < (b + 1) * bin_size; ++i) bin_sum += xs[i];
        const double d = bin_sum / static_cast<double>(bin_size) - s.mean;
        var += d * d;
    }
    if (n_bins > 1)
        s.std_err = std::sqrt(var / static_cast<double>(n_bins - 1) / static_cast<double>(n_bins));
    return s;
}

} // namespace

SimulationSeries simulate(IsingChain chain, const MetropolisParams& params,
                          ActivationSchedule schedule, long sweeps, long burn_in, CellMode mode,
                          RngStream& rng) {
    if (burn_in < 0 || sweeps <= burn_in)
        throw std::invalid_argument("simulate: need sweeps > burn_in >= 0");

    SimulationSeries series;
    std::vector<double> mags, energies, corrs;
    const int steps = schedule.steps_per_sweep(chain.size());
    for (long sweep = 1; sweep <= sweeps; ++sweep) {
        for (int s = 0; s < steps; ++s)
            chain = step_cells(chain, params, schedule.next_cells(chain.size(), rng), mode, rng);
        if (sweep <= burn_in) continue;
        ObservablePoint pt;
        pt.sweep = sweep;
        pt.magnetization = chain.magnetization();
        pt.energy = chain.energy();
        pt.nn_correlation = chain.nn_correlation();
        series.points.push_back(pt);
        mags.push_back(pt.magnetization);
        energies.push_back(pt.energy);
        corrs.push_back(pt.nn_correlation);
    }
    series.magnetization = summarize(mags);
    series.energy = summarize(energies);
    series.nn_correlation = summarize(corrs);
    series.final_chain = chain;
    return series;
}

double exact_correlation(int n_cells, double beta_j, int distance) {
    if (n_cells < 1) throw std::invalid_argument("exact_correlation: n_cells must be >= 1");
    if (distance < 0 || distance > n_cells)
        throw std::invalid_argument("exact_correlation: distance must be in [0, N]");
    const double t = std::tanh(beta_j);
    return (std::pow(t, distance) + std::pow(t, n_cells - distance)) /
           (1.0 + std::pow(t, n_cells));
}

} // namespace qglab::ising
