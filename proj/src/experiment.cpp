#include "qglab/experiment.hpp"

#include "qglab/games/breaker.hpp"
#include "qglab/games/wiesner.hpp"
#include "qglab/ising.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace qglab::cli {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

double binomial_std_err(double rate, std::uint64_t trials) {
    return std::sqrt(rate * (1.0 - rate) / static_cast<double>(trials));
}

[[noreturn]] void bad_param(const std::string& msg) { throw std::invalid_argument(msg); }

/// Integer-counter Monte Carlo fan-out. Each trial gets its own stream
/// RngStream(seed, row<<32 | trial) and reports a bucket index; bucket
/// counts are summed, so the result does not depend on how trials are
/// split across workers.
std::vector<std::uint64_t> run_trial_buckets(
    std::uint64_t trials, int workers, std::uint64_t seed, std::uint64_t row,
    std::size_t n_buckets, const std::function<std::size_t(RngStream&)>& trial) {
    workers = std::max(1, workers);
    const std::uint64_t w = std::min<std::uint64_t>(static_cast<std::uint64_t>(workers), trials);
    std::vector<std::vector<std::uint64_t>> partial(w, std::vector<std::uint64_t>(n_buckets, 0));

    auto run_range = [&](std::uint64_t lo, std::uint64_t hi, std::vector<std::uint64_t>& counts) {
        for (std::uint64_t t = lo; t < hi; ++t) {
            RngStream stream(seed, (row << 32) | t);
            ++counts.at(trial(stream));
        }
    };

    if (w <= 1) {
        run_range(0, trials, partial[0]);
    } else {
        std::vector<std::thread> pool;
        const std::uint64_t chunk = (trials + w - 1) / w;
        for (std::uint64_t i = 0; i < w; ++i) {
            const std::uint64_t lo = i * chunk;
            const std::uint64_t hi = std::min(trials, lo + chunk);
            pool.emplace_back(run_range, lo, hi, std::ref(partial[i]));
        }
        for (auto& th : pool) th.join();
    }

    std::vector<std::uint64_t> total(n_buckets, 0);
    for (const auto& counts : partial)
        for (std::size_t b = 0; b < n_buckets; ++b) total[b] += counts[b];
    return total;
}

// Bucket layout for tester runs.
enum : std::size_t { kExploded = 0, kVerdict0 = 1, kVerdict1 = 2, kTesterBuckets = 3 };

std::size_t tester_bucket(const games::TesterResult& r) {
    if (r.exploded()) return kExploded;
    return r.verdict == 0 ? kVerdict0 : kVerdict1;
}

PureState tactic_state(const std::string& name) {
    if (name == "zero") return PureState::single_qubit(1.0, 0.0);
    if (name == "one") return PureState::single_qubit(0.0, 1.0);
    if (name == "plus") {
        const double s = 1.0 / std::sqrt(2.0);
        return PureState::single_qubit(s, s);
    }
    bad_param("tactic must be zero, one or plus");
}

games::BreakerKind breaker_kind(const ExperimentConfig& cfg) {
    if (cfg.breaker == "qutrojan") return games::BreakerKind::qutrojan();
    if (cfg.breaker == "classical") return games::BreakerKind::classical_switch(cfg.prob_not);
    bad_param("breaker must be classical or qutrojan");
}

games::BombState bomb_state(const std::string& name) {
    if (name == "working") return {true};
    if (name == "damaged") return {false};
    bad_param("bomb must be working or damaged");
}

games::VerifyVariant verify_variant(const std::string& name) {
    if (name == "swap") return games::VerifyVariant::Swap;
    if (name == "hadamard") return games::VerifyVariant::Hadamard;
    bad_param("variant must be swap or hadamard");
}

games::BasisPolicy basis_policy(const std::string& name) {
    if (name == "haar") return games::BasisPolicy::HaarRandom;
    if (name == "pair") return games::BasisPolicy::ComputationalPair;
    bad_param("policy must be haar or pair");
}

void require_trials(const ExperimentConfig& cfg) {
    if (cfg.trials < 1) bad_param("trials must be >= 1");
}

struct MetaParams {
    std::string text;
    void add(const std::string& key, const std::string& value) {
        text += " " + key + "=" + value;
    }
    void add(const std::string& key, std::uint64_t v) { add(key, std::to_string(v)); }
    void add(const std::string& key, long v) { add(key, std::to_string(v)); }
    void add(const std::string& key, int v) { add(key, std::to_string(v)); }
    void add(const std::string& key, double v) { add(key, fmt17(v)); }
};

std::string metadata_line(const ExperimentConfig& cfg, MetaParams params) {
    std::string line = "# ";
    line += kArtifactVersion;
    line += " subcommand=" + cfg.subcommand + params.text;
    if (!cfg.sweep_param.empty()) {
        line += " sweep=" + cfg.sweep_param + " values=";
        for (std::size_t i = 0; i < cfg.sweep_values.size(); ++i) {
            if (i) line += ",";
            line += std::to_string(cfg.sweep_values[i]);
        }
    }
    line += "\n";
    return line;
}

/// Sorted sweep values, or the single configured value when no sweep is
/// requested. Every value must satisfy `minimum`.
std::vector<long> row_values(const ExperimentConfig& cfg, const std::string& param, long single,
                             long minimum) {
    if (cfg.sweep_param.empty()) {
        if (single < minimum) bad_param(param + " must be >= " + std::to_string(minimum));
        return {single};
    }
    if (cfg.sweep_param != param)
        bad_param("subcommand '" + cfg.subcommand + "' can only sweep '" + param + "'");
    if (cfg.sweep_values.empty()) bad_param("sweep requested without values");
    std::vector<long> values = cfg.sweep_values;
    std::sort(values.begin(), values.end());
    for (long v : values)
        if (v < minimum) bad_param(param + " must be >= " + std::to_string(minimum));
    return values;
}

std::string render_newcomb(const ExperimentConfig& cfg) {
    require_trials(cfg);
    if (!cfg.sweep_param.empty()) bad_param("newcomb does not support sweeps");
    const PureState tactic = tactic_state(cfg.tactic);
    const games::BreakerKind breaker = breaker_kind(cfg);

    // The exact joint law does not consume randomness; the single mandated
    // trial below is discarded.
    RngStream scratch(cfg.seed, ~std::uint64_t{0});
    const auto exact = games::run_newcomb(tactic, breaker, 1, scratch).exact;

    auto counts = run_trial_buckets(cfg.trials, cfg.workers, cfg.seed, 0, 4,
                                    [&](RngStream& stream) -> std::size_t {
                                        auto one = games::run_newcomb(tactic, breaker, 1, stream);
                                        for (std::size_t i = 0; i < 4; ++i)
                                            if (one.counts[i]) return i;
                                        return 0;
                                    });

    MetaParams meta;
    meta.add("tactic", cfg.tactic);
    meta.add("breaker", cfg.breaker);
    if (cfg.breaker == "classical") meta.add("prob_not", cfg.prob_not);
    meta.add("trials", cfg.trials);
    meta.add("seed", cfg.seed);

    std::string out = metadata_line(cfg, meta);
    out += "upper,lower,count,freq_mc,prob_exact\n";
    for (int upper = 0; upper < 2; ++upper)
        for (int lower = 0; lower < 2; ++lower) {
            const std::size_t i = static_cast<std::size_t>(upper * 2 + lower);
            const double freq =
                static_cast<double>(counts[i]) / static_cast<double>(cfg.trials);
            out += std::to_string(upper) + "," + std::to_string(lower) + "," +
                   std::to_string(counts[i]) + "," + fmt17(freq) + "," + fmt17(exact[i]) + "\n";
        }
    return out;
}

std::string render_ev_breaker(const ExperimentConfig& cfg) {
    require_trials(cfg);
    if (cfg.first_qubit != 0 && cfg.first_qubit != 1) bad_param("first_qubit must be 0 or 1");
    const std::vector<long> ns = row_values(cfg, "n", cfg.n, 1);

    MetaParams meta;
    if (cfg.sweep_param.empty()) meta.add("n", cfg.n);
    meta.add("first_qubit", cfg.first_qubit);
    meta.add("trials", cfg.trials);
    meta.add("seed", cfg.seed);

    std::string out = metadata_line(cfg, meta);
    out += "n,first_qubit,survival_mc,survival_exact,std_err\n";
    for (std::size_t row = 0; row < ns.size(); ++row) {
        const int n = static_cast<int>(ns[row]);
        auto counts = run_trial_buckets(
            cfg.trials, cfg.workers, cfg.seed, row, kTesterBuckets, [&](RngStream& stream) {
                return tester_bucket(games::run_ev_breaker(n, cfg.first_qubit, stream));
            });
        const double survival =
            static_cast<double>(counts[kVerdict0] + counts[kVerdict1]) /
            static_cast<double>(cfg.trials);
        const double exact = cfg.first_qubit == 1 ? games::zeno_survival(n) : 1.0;
        out += std::to_string(n) + "," + std::to_string(cfg.first_qubit) + "," + fmt17(survival) +
               "," + fmt17(exact) + "," + fmt17(binomial_std_err(survival, cfg.trials)) + "\n";
    }
    return out;
}

std::string render_bomb_zeno(const ExperimentConfig& cfg) {
    require_trials(cfg);
    const games::BombState bomb = bomb_state(cfg.bomb);
    const std::vector<long> ns = row_values(cfg, "n", cfg.n, 1);

    MetaParams meta;
    if (cfg.sweep_param.empty()) meta.add("n", cfg.n);
    meta.add("bomb", cfg.bomb);
    meta.add("trials", cfg.trials);
    meta.add("seed", cfg.seed);

    std::string out = metadata_line(cfg, meta);
    out += "n,survival_mc,survival_exact,std_err\n";
    for (std::size_t row = 0; row < ns.size(); ++row) {
        const int n = static_cast<int>(ns[row]);
        auto counts = run_trial_buckets(
            cfg.trials, cfg.workers, cfg.seed, row, kTesterBuckets, [&](RngStream& stream) {
                return tester_bucket(games::run_bomb_tester_zeno(n, bomb, stream));
            });
        const double survival =
            static_cast<double>(counts[kVerdict0] + counts[kVerdict1]) /
            static_cast<double>(cfg.trials);
        const double exact = bomb.working ? games::zeno_survival(n) : 1.0;
        out += std::to_string(n) + "," + fmt17(survival) + "," + fmt17(exact) + "," +
               fmt17(binomial_std_err(survival, cfg.trials)) + "\n";
    }
    return out;
}

std::string render_supply_demand(const ExperimentConfig& cfg) {
    require_trials(cfg);
    const games::BombState bomb = bomb_state(cfg.bomb);
    const std::vector<long> ns = row_values(cfg, "n", cfg.n, 1);

    MetaParams meta;
    if (cfg.sweep_param.empty()) meta.add("n", cfg.n);
    meta.add("bomb", cfg.bomb);
    meta.add("trials", cfg.trials);
    meta.add("seed", cfg.seed);

    std::string out = metadata_line(cfg, meta);
    out += "n,survival_mc,survival_exact,zeno_survival_exact,dominates_zeno,std_err\n";
    for (std::size_t row = 0; row < ns.size(); ++row) {
        const int n = static_cast<int>(ns[row]);
        auto counts = run_trial_buckets(
            cfg.trials, cfg.workers, cfg.seed, row, kTesterBuckets, [&](RngStream& stream) {
                return tester_bucket(games::run_supply_demand(n, bomb, stream));
            });
        const double survival =
            static_cast<double>(counts[kVerdict0] + counts[kVerdict1]) /
            static_cast<double>(cfg.trials);
        const double exact = bomb.working ? games::supply_demand_survival(n) : 1.0;
        const double zeno = bomb.working ? games::zeno_survival(n) : 1.0;
        out += std::to_string(n) + "," + fmt17(survival) + "," + fmt17(exact) + "," + fmt17(zeno) +
               "," + bool_str(exact > zeno) + "," +
               fmt17(binomial_std_err(survival, cfg.trials)) + "\n";
    }
    return out;
}

std::string render_bomb_antizeno(const ExperimentConfig& cfg) {
    const std::vector<long> ns = row_values(cfg, "n", cfg.n, 1);

    MetaParams meta;
    if (cfg.sweep_param.empty()) meta.add("n", cfg.n);
    meta.add("alpha", cfg.alpha);

    std::string out = metadata_line(cfg, meta);
    out += "n,alpha,bomb,p_verdict_one\n";
    for (long nv : ns) {
        const int n = static_cast<int>(nv);
        for (const char* bomb : {"damaged", "working"}) {
            const auto law = games::run_bomb_tester_antizeno(n, cfg.alpha, bomb_state(bomb));
            out += std::to_string(n) + "," + fmt17(cfg.alpha) + "," + bomb + "," +
                   fmt17(law.p_verdict_one) + "\n";
        }
    }
    return out;
}

std::string render_wiesner(const ExperimentConfig& cfg) {
    require_trials(cfg);
    const games::VerifyVariant variant = verify_variant(cfg.variant);
    const games::BasisPolicy policy = basis_policy(cfg.policy);
    const bool legitimate = cfg.forger == "legitimate";
    games::ForgerModel forger = games::ForgerModel::UniformGuess;
    if (cfg.forger == "measure_resend") forger = games::ForgerModel::MeasureResend;
    else if (!legitimate && cfg.forger != "uniform_guess")
        bad_param("forger must be uniform_guess, measure_resend or legitimate");
    const std::vector<long> ks = row_values(cfg, "k", cfg.k, 1);

    MetaParams meta;
    if (cfg.sweep_param.empty()) meta.add("k", cfg.k);
    meta.add("variant", cfg.variant);
    meta.add("policy", cfg.policy);
    meta.add("forger", cfg.forger);
    meta.add("trials", cfg.trials);
    meta.add("seed", cfg.seed);

    std::string out = metadata_line(cfg, meta);
    out += "k,variant,policy,forger,pass_rate,std_err\n";
    for (std::size_t row = 0; row < ks.size(); ++row) {
        const int k = static_cast<int>(ks[row]);
        auto counts = run_trial_buckets(
            cfg.trials, cfg.workers, cfg.seed, row, 2, [&](RngStream& stream) -> std::size_t {
                if (legitimate) {
                    games::Banknote note = games::mint_banknote(k, policy, 0, stream);
                    std::vector<int> bits;
                    bits.reserve(note.rounds.size());
                    for (const auto& r : note.rounds) bits.push_back(r.alice_bit);
                    return games::verify_banknote(note, bits, variant, stream).pass ? 1 : 0;
                }
                return games::forgery_experiment(k, 1, variant, policy, forger, stream).passes;
            });
        const double rate = static_cast<double>(counts[1]) / static_cast<double>(cfg.trials);
        out += std::to_string(k) + "," + cfg.variant + "," + cfg.policy + "," + cfg.forger + "," +
               fmt17(rate) + "," + fmt17(binomial_std_err(rate, cfg.trials)) + "\n";
    }
    return out;
}

std::string render_ising(const ExperimentConfig& cfg) {
    if (!cfg.sweep_param.empty()) bad_param("ising does not support sweeps");
    if (cfg.cells < 3) bad_param("cells must be >= 3");
    if (cfg.beta_j < 0.0 && (cfg.p < 0.0 || cfg.p > 1.0))
        bad_param("provide beta_j >= 0 or p in [0, 1]");
    const ising::MetropolisParams params = cfg.beta_j >= 0.0
                                               ? ising::MetropolisParams::from_beta_j(cfg.beta_j)
                                               : ising::MetropolisParams::from_p(cfg.p);
    ising::ActivationSchedule schedule = [&] {
        if (cfg.schedule == "even_odd") return ising::ActivationSchedule::even_odd();
        if (cfg.schedule == "single_random") return ising::ActivationSchedule::single_random_cell();
        bad_param("schedule must be even_odd or single_random");
    }();
    if (cfg.schedule == "even_odd" && cfg.cells % 2 != 0)
        bad_param("even_odd schedule needs an even cell count");
    ising::CellMode mode = [&] {
        if (cfg.mode == "classical") return ising::CellMode::Classical;
        if (cfg.mode == "quantum_cell") return ising::CellMode::QuantumCell;
        bad_param("mode must be classical or quantum_cell");
    }();

    RngStream rng(cfg.seed, 0);
    ising::IsingChain chain = ising::IsingChain::random(cfg.cells, rng);
    const auto series =
        ising::simulate(chain, params, schedule, cfg.sweeps, cfg.burn_in, mode, rng);

    MetaParams meta;
    meta.add("cells", cfg.cells);
    if (cfg.beta_j >= 0.0) meta.add("beta_j", cfg.beta_j);
    meta.add("p", params.p);
    meta.add("sweeps", cfg.sweeps);
    meta.add("burn_in", cfg.burn_in);
    meta.add("mode", cfg.mode);
    meta.add("schedule", cfg.schedule);
    meta.add("seed", cfg.seed);

    std::string out = metadata_line(cfg, meta);
    out += "sweep,magnetization,energy,nn_correlation\n";
    out.reserve(out.size() + series.points.size() * 64);
    for (const auto& pt : series.points) {
        out += std::to_string(pt.sweep) + "," + fmt17(pt.magnetization) + "," + fmt17(pt.energy) +
               "," + fmt17(pt.nn_correlation) + "\n";
    }
    out += "# mean_magnetization=" + fmt17(series.magnetization.mean) +
           " std_err=" + fmt17(series.magnetization.std_err) + "\n";
    out += "# mean_energy=" + fmt17(series.energy.mean) +
           " std_err=" + fmt17(series.energy.std_err) + "\n";
    out += "# mean_nn_correlation=" + fmt17(series.nn_correlation.mean) +
           " std_err=" + fmt17(series.nn_correlation.std_err) + "\n";
    return out;
}

std::string render_identities(const ExperimentConfig& cfg) {
    if (!cfg.sweep_param.empty()) bad_param("identities does not support sweeps");
    if (cfg.tol <= 0.0) bad_param("tol must be > 0");
    RngStream rng(cfg.seed, 0);
    const SingleQubitGate I = gates::identity();
    const SingleQubitGate X = gates::not_gate();
    const SingleQubitGate H = gates::hadamard();

    struct Row {
        std::string name;
        double dev;
    };
    std::vector<Row> rows;

    rows.push_back({"not_squared_is_minus_identity", phase_distance(compose(X, X), I)});
    rows.push_back({"hadamard_squared_is_minus_identity", phase_distance(compose(H, H), I)});
    const SingleQubitGate diag{Amplitude{0.0, -1.0}, 0.0, 0.0, Amplitude{0.0, 1.0}};
    rows.push_back({"h_not_h_is_diag", entry_distance(compose(H, compose(X, H)), diag)});

    constexpr double two_pi = 2.0 * std::numbers::pi;
    double dev = 0.0;
    for (int n = 1; n <= 64; ++n) {
        SingleQubitGate g = I;
        const SingleQubitGate root = gates::root_not(n);
        for (int i = 0; i < n; ++i) g = compose(root, g);
        dev = std::max(dev, phase_distance(g, X));
    }
    rows.push_back({"root_not_power_is_not", dev});

    dev = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double p1 = two_pi * rng.next_double();
        const double p2 = two_pi * rng.next_double();
        dev = std::max(dev, phase_distance(compose(gates::exp_not(p1), gates::exp_not(p2)),
                                           gates::exp_not(p1 + p2)));
    }
    rows.push_back({"exp_not_additive", dev});

    dev = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double a = two_pi * rng.next_double();
        const double b1 = two_pi * rng.next_double();
        const double b2 = two_pi * rng.next_double();
        const SingleQubitGate lhs =
            compose(gates::v_gate(a, b2), compose(gates::not_pow(3.0), gates::v_gate(a, b1)));
        dev = std::max(dev, entry_distance(lhs, gates::v_gate(a, b1 + b2)));
    }
    rows.push_back({"v_not3_v_composes", dev});

    MetaParams meta;
    meta.add("tol", cfg.tol);
    meta.add("seed", cfg.seed);
    std::string out = metadata_line(cfg, meta);
    out += "identity,max_deviation,pass\n";
    for (const Row& r : rows)
        out += r.name + "," + fmt17(r.dev) + "," + bool_str(r.dev <= cfg.tol) + "\n";
    return out;
}

} // namespace

std::string render_experiment_csv(const ExperimentConfig& cfg) {
    if (cfg.subcommand == "newcomb") return render_newcomb(cfg);
    if (cfg.subcommand == "ev-breaker") return render_ev_breaker(cfg);
    if (cfg.subcommand == "bomb-zeno") return render_bomb_zeno(cfg);
    if (cfg.subcommand == "bomb-antizeno") return render_bomb_antizeno(cfg);
    if (cfg.subcommand == "supply-demand") return render_supply_demand(cfg);
    if (cfg.subcommand == "wiesner") return render_wiesner(cfg);
    if (cfg.subcommand == "ising") return render_ising(cfg);
    if (cfg.subcommand == "identities") return render_identities(cfg);
    bad_param("unknown subcommand '" + cfg.subcommand + "'");
}

int run_experiment(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
    std::string csv;
    try {
        csv = render_experiment_csv(cfg);
    } catch (const std::exception& e) {
        err << "qglab: " << e.what() << "\n";
        return 2;
    }
    if (cfg.output_path == "-" || cfg.output_path.empty()) {
        out << csv;
        return 0;
    }
    std::ofstream file(cfg.output_path, std::ios::binary);
    if (!file) {
        err << "qglab: cannot open output file '" << cfg.output_path << "'\n";
        return 2;
    }
    file << csv;
    return 0;
}

} // namespace qglab::cli
