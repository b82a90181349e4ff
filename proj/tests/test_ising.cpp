#include "qglab/ising.hpp"

#include <doctest.h>

#include <cmath>
#include <map>

using namespace qglab;
using namespace qglab::ising;

namespace {

double binom_sigma(double p, double n) { return std::sqrt(p * (1.0 - p) / n); }

// Exact P(new bit = 1) of the classical rule: ancilla mixture over the
// deterministic local_rule outcomes. Independent of the circuit route.
double classical_cell_law(int l, int k, int r, double p) {
    return p * local_rule(l, k, r, 1) + (1.0 - p) * local_rule(l, k, r, 0);
}

// Brute-force Gibbs expectation <sigma_0 sigma_d> by enumerating all 2^N
// configurations; the independent oracle for exact_correlation.
double gibbs_correlation(int n, double beta, int d) {
    double z = 0.0, acc = 0.0;
    for (int cfg = 0; cfg < (1 << n); ++cfg) {
        double e = 0.0;
        for (int k = 0; k < n; ++k) {
            const double sk = 1.0 - 2.0 * ((cfg >> k) & 1);
            const double sk1 = 1.0 - 2.0 * ((cfg >> ((k + 1) % n)) & 1);
            e -= sk * sk1;
        }
        const double w = std::exp(-beta * e);
        const double s0 = 1.0 - 2.0 * (cfg & 1);
        const double sd = 1.0 - 2.0 * ((cfg >> (d % n)) & 1);
        z += w;
        acc += w * s0 * sd;
    }
    return acc / z;
}

} // namespace

TEST_CASE("local_rule truth values") {
    CHECK(local_rule(0, 0, 0, 1) == 0); // aligned + fired switch: stay
    CHECK(local_rule(0, 0, 0, 0) == 1); // aligned, switch idle: flip
    CHECK(local_rule(0, 1, 0, 0) == 0); // anti-aligned spin always relaxes
    CHECK(local_rule(0, 1, 0, 1) == 0);
    CHECK(local_rule(1, 1, 1, 1) == 1);
    CHECK(local_rule(1, 1, 1, 0) == 0);
    // global flip symmetry: rule(flip neighborhood) = flip(rule)
    for (int l = 0; l < 2; ++l)
        for (int k = 0; k < 2; ++k)
            for (int r = 0; r < 2; ++r)
                for (int a = 0; a < 2; ++a)
                    CHECK(local_rule(1 - l, 1 - k, 1 - r, a) == 1 - local_rule(l, k, r, a));
}

TEST_CASE("chain observables and validation") {
    const IsingChain chain({0, 0, 1, 1});
    CHECK(chain.magnetization() == doctest::Approx(0.0));
    CHECK(chain.energy() == doctest::Approx(0.0)); // two +1 and two -1 bonds
    CHECK(chain.nn_correlation() == doctest::Approx(0.0));
    CHECK(IsingChain::aligned(5).energy() == doctest::Approx(-5.0));
    CHECK(IsingChain::aligned(5).nn_correlation() == doctest::Approx(1.0));
    CHECK(chain.spin(-1) == 1);
    CHECK(chain.spin(4) == 0);
    CHECK_THROWS_AS(IsingChain({0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(IsingChain({0, 1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(MetropolisParams::from_p(1.5), std::invalid_argument);
    CHECK_THROWS_AS(MetropolisParams::from_beta_j(-0.1), std::invalid_argument);
    CHECK(MetropolisParams::from_beta_j(0.5).p ==
          doctest::Approx(1.0 - std::exp(-2.0)).epsilon(1e-12));
}

TEST_CASE("activation schedules are pairwise non-adjacent and validated") {
    RngStream rng(1, 0);
    for (int n : {4, 6, 8, 16}) {
        auto sched = ActivationSchedule::even_odd();
        const auto evens = sched.next_cells(n, rng);
        const auto odds = sched.next_cells(n, rng);
        CHECK(evens.size() == static_cast<std::size_t>(n / 2));
        CHECK(odds.size() == static_cast<std::size_t>(n / 2));
        auto non_adjacent = [n](const std::vector<int>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i)
                for (std::size_t j = i + 1; j < cells.size(); ++j) {
                    const int d = std::abs(cells[i] - cells[j]);
                    if (d == 1 || d == n - 1) return false;
                }
            return true;
        };
        CHECK(non_adjacent(evens));
        CHECK(non_adjacent(odds));
    }
    auto sched = ActivationSchedule::even_odd();
    CHECK_THROWS_AS(sched.next_cells(5, rng), std::invalid_argument);

    auto single = ActivationSchedule::single_random_cell();
    for (int rep = 0; rep < 100; ++rep) {
        const auto cells = single.next_cells(7, rng);
        REQUIRE(cells.size() == 1);
        CHECK(cells[0] >= 0);
        CHECK(cells[0] < 7);
    }
}

TEST_CASE("classical_step degenerate switch probabilities") {
    RngStream rng(2, 0);
    const auto p1 = MetropolisParams::from_p(1.0);
    auto sched = ActivationSchedule::even_odd();
    const IsingChain aligned = IsingChain::aligned(8);
    // p = 1 on an aligned chain: activated cells always stay
    CHECK(classical_step(aligned, p1, sched, rng) == aligned);

    // p = 0: every activated cell flips
    const auto p0 = MetropolisParams::from_p(0.0);
    auto sched2 = ActivationSchedule::even_odd();
    const IsingChain stepped = classical_step(aligned, p0, sched2, rng);
    for (int k = 0; k < 8; ++k) CHECK(stepped.spins[k] == (k % 2 == 0 ? 1 : 0));
}

TEST_CASE("classical_step golden run (seed 2024, N=8, 3 even/odd steps)") {
    RngStream rng(2024, 0);
    IsingChain chain = IsingChain::random(8, rng);
    CHECK(chain == IsingChain({0, 0, 1, 1, 1, 0, 0, 1}));
    const auto params = MetropolisParams::from_p(0.6);
    auto sched = ActivationSchedule::even_odd();
    const std::vector<std::vector<int>> golden = {
        {1, 0, 0, 1, 0, 0, 1, 1},
        {1, 1, 0, 0, 0, 1, 1, 1},
        {1, 1, 1, 0, 1, 1, 0, 1},
    };
    for (const auto& expect : golden) {
        chain = classical_step(chain, params, sched, rng);
        CHECK(chain.spins == expect);
    }
}

TEST_CASE("global spin flip commutes with classical_step under paired seeds") {
    for (std::uint64_t seed : {3u, 4u, 5u}) {
        RngStream rng_a(seed, 1), rng_b(seed, 1);
        RngStream init(seed, 2);
        IsingChain chain = IsingChain::random(10, init);
        IsingChain flipped = chain;
        for (int& b : flipped.spins) b = 1 - b;
        const auto params = MetropolisParams::from_beta_j(0.4);
        auto sched_a = ActivationSchedule::even_odd();
        auto sched_b = ActivationSchedule::even_odd();
        for (int step = 0; step < 6; ++step) {
            chain = classical_step(chain, params, sched_a, rng_a);
            flipped = classical_step(flipped, params, sched_b, rng_b);
            for (int k = 0; k < 10; ++k) CHECK(flipped.spins[k] == 1 - chain.spins[k]);
        }
    }
}

TEST_CASE("quantum cell law equals the classical rule law (TV < 1e-10)") {
    for (double p : {0.0, 0.25, 0.7, 1.0})
        for (int cfg = 0; cfg < 8; ++cfg) {
            const int l = cfg & 1, k = (cfg >> 1) & 1, r = (cfg >> 2) & 1;
            const double q = quantum_cell_law(l, k, r, p);
            const double c = classical_cell_law(l, k, r, p);
            CHECK(std::abs(q - c) < 1e-10);
        }
    // aligned triple keeps its value with probability exactly p
    CHECK(quantum_cell_law(1, 1, 1, 0.3) == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("quantum_cell_update at p=0 is a deterministic NOT of the cell") {
    RngStream rng(6, 0);
    const auto params = MetropolisParams::from_p(0.0);
    for (int cfg = 0; cfg < 8; ++cfg) {
        const int l = cfg & 1, k = (cfg >> 1) & 1, r = (cfg >> 2) & 1;
        for (int rep = 0; rep < 10; ++rep)
            CHECK(quantum_cell_update(l, k, r, params, rng) == 1 - k);
    }
    CHECK_THROWS_AS(quantum_cell_update(2, 0, 0, params, rng), std::invalid_argument);
}

TEST_CASE("quantum_cell_update sampling matches the law") {
    RngStream rng(7, 0);
    const auto params = MetropolisParams::from_p(0.3);
    const int trials = 20000;
    int ones = 0;
    for (int t = 0; t < trials; ++t) ones += quantum_cell_update(1, 1, 1, params, rng);
    CHECK(std::abs(ones / double(trials) - 0.3) < 3.0 * binom_sigma(0.3, trials));

    // conjugated-basis hook: measuring along H is still a fair bit here
    int h_ones = 0;
    for (int t = 0; t < trials; ++t)
        h_ones += quantum_cell_update(1, 1, 1, params, rng, gates::hadamard());
    CHECK(h_ones > 0);
    CHECK(h_ones < trials);
}

TEST_CASE("exact_correlation closed form against brute-force Gibbs") {
    CHECK(exact_correlation(16, 0.0, 5) == doctest::Approx(0.0));
    CHECK(exact_correlation(16, 0.7, 0) == doctest::Approx(1.0));
    CHECK(exact_correlation(16, 0.7, 16) == doctest::Approx(1.0));
    const double t = std::tanh(0.5);
    CHECK(exact_correlation(16, 0.5, 1) ==
          doctest::Approx((t + std::pow(t, 15)) / (1.0 + std::pow(t, 16))).epsilon(1e-14));
    for (int n : {3, 8})
        for (double beta : {0.3, 0.7})
            for (int d = 0; d <= n; ++d)
                CHECK(exact_correlation(n, beta, d) ==
                      doctest::Approx(gibbs_correlation(n, beta, d)).epsilon(1e-12));
    CHECK_THROWS_AS(exact_correlation(8, 0.5, 9), std::invalid_argument);
    CHECK_THROWS_AS(exact_correlation(8, 0.5, -1), std::invalid_argument);
}

TEST_CASE("p=1 freezes an aligned chain at nn_correlation 1") {
    RngStream rng(8, 0);
    const auto series = simulate(IsingChain::aligned(8), MetropolisParams::from_p(1.0),
                                 ActivationSchedule::even_odd(), 200, 0, CellMode::Classical, rng);
    for (const auto& pt : series.points) CHECK(pt.nn_correlation == doctest::Approx(1.0));
    CHECK(series.nn_correlation.mean == doctest::Approx(1.0));
}

TEST_CASE("simulate matches the transfer matrix (single random cell)") {
    RngStream rng(9, 0);
    const auto series =
        simulate(IsingChain::aligned(8), MetropolisParams::from_beta_j(0.4),
                 ActivationSchedule::single_random_cell(), 60000, 5000, CellMode::Classical, rng);
    const double expect = exact_correlation(8, 0.4, 1);
    CHECK(std::abs(series.nn_correlation.mean - expect) < 3.0 * series.nn_correlation.std_err);
}

TEST_CASE("quantum-cell mode agrees with classical mode in distribution") {
    RngStream rng_c(10, 0), rng_q(10, 1);
    const auto params = MetropolisParams::from_beta_j(0.4);
    const auto classical =
        simulate(IsingChain::aligned(8), params, ActivationSchedule::single_random_cell(), 20000,
                 2000, CellMode::Classical, rng_c);
    const auto quantum =
        simulate(IsingChain::aligned(8), params, ActivationSchedule::single_random_cell(), 20000,
                 2000, CellMode::QuantumCell, rng_q);
    const double se = std::sqrt(std::pow(classical.nn_correlation.std_err, 2) +
                                std::pow(quantum.nn_correlation.std_err, 2));
    CHECK(std::abs(classical.nn_correlation.mean - quantum.nn_correlation.mean) < 3.0 * se);
}

TEST_CASE("single-random-cell sampling reproduces the Gibbs distribution at N=3") {
    const double beta = 0.4;
    const auto params = MetropolisParams::from_beta_j(beta);
    auto sched = ActivationSchedule::single_random_cell();
    RngStream rng(11, 0);
    IsingChain chain = IsingChain::aligned(3);

    std::map<int, long> hist;
    const long steps = 1000000;
    for (long s = 0; s < steps; ++s) {
        chain = classical_step(chain, params, sched, rng);
        if (s % 10 == 9) // subsample to decorrelate
            ++hist[chain.spins[0] | (chain.spins[1] << 1) | (chain.spins[2] << 2)];
    }
    const long samples = steps / 10;

    // Gibbs weights: aligned states have E = -3, the other six E = +1
    const double w_aligned = std::exp(3.0 * beta), w_other = std::exp(-beta);
    const double z = 2.0 * w_aligned + 6.0 * w_other;
    for (int cfg = 0; cfg < 8; ++cfg) {
        const bool aligned = cfg == 0 || cfg == 7;
        const double expect = (aligned ? w_aligned : w_other) / z;
        const double freq = hist[cfg] / double(samples);
        CHECK(std::abs(freq - expect) < 3.0 * binom_sigma(expect, samples));
    }
}

TEST_CASE("simulate validates the sweep window") {
    RngStream rng(12, 0);
    CHECK_THROWS_AS(simulate(IsingChain::aligned(4), MetropolisParams::from_p(0.5),
                             ActivationSchedule::even_odd(), 10, 10, CellMode::Classical, rng),
                    std::invalid_argument);
    CHECK_THROWS_AS(simulate(IsingChain::aligned(4), MetropolisParams::from_p(0.5),
                             ActivationSchedule::even_odd(), 10, -1, CellMode::Classical, rng),
                    std::invalid_argument);
}
