#include "qglab/games/wiesner.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace qglab::games {

namespace {
constexpr double kPi = std::numbers::pi;
} // namespace

ProjectiveCoord ProjectiveCoord::from_bloch(double theta, double phi) {
    if (theta < 0.0 || theta > kPi) throw std::invalid_argument("from_bloch: theta outside [0, pi]");
    if (theta == kPi) return infinity();
    return {std::polar(std::tan(theta / 2.0), phi), false};
}

ProjectiveCoord hadamard_z_action(const ProjectiveCoord& z) {
    if (z.infinite) return {Amplitude{-1.0, 0.0}, false};
    const Amplitude denom = 1.0 + z.value;
    if (std::abs(denom) == 0.0) return ProjectiveCoord::infinity();
    return {(1.0 - z.value) / denom, false};
}

Banknote mint_banknote(int k, BasisPolicy policy, std::uint64_t serial, RngStream& rng) {
    if (k < 1) throw std::invalid_argument("mint_banknote: k must be >= 1");
    Banknote note;
    note.serial = serial;
    note.rounds.reserve(k);
    for (int i = 0; i < k; ++i) {
        SubGameRecord rec;
        if (policy == BasisPolicy::HaarRandom) {
            rec.theta = std::acos(1.0 - 2.0 * rng.next_double());
            rec.phi = 2.0 * kPi * rng.next_double();
        } else {
            rec.theta = rng.next_below(2) == 1 ? kPi : 0.0;
            rec.phi = 0.0;
        }
        rec.alice_bit = static_cast<int>(rng.next_below(2));
        rec.z = ProjectiveCoord::from_bloch(rec.theta, rec.phi);
        note.rounds.push_back(rec);
    }
    return note;
}

namespace {

void controlled_swap(PureState& st, int control, int a, int b) {
    const SingleQubitGate x = gates::pauli_x();
    st.apply(x, b, {control, a});
    st.apply(x, a, {control, b});
    st.apply(x, b, {control, a});
}

} // namespace

RoundOutcome run_identification_round(const SubGameRecord& rec, int claimant_bit,
                                      VerifyVariant variant, RngStream& rng,
                                      std::optional<int> tamper_basis_bit) {
    if (claimant_bit != 0 && claimant_bit != 1)
        throw std::invalid_argument("run_identification_round: claimant bit must be 0 or 1");
    const SingleQubitGate trent_basis = gates::bloch_rotation(rec.theta, rec.phi);

    PureState st = [&] {
        if (variant == VerifyVariant::Swap) {
            // q0 = Trent's qubit, q1 = ancillary qubit, q2 = Alice, q3 = claimant
            std::uint64_t idx = (static_cast<std::uint64_t>(claimant_bit) << 3) |
                                (static_cast<std::uint64_t>(rec.alice_bit) << 2);
            return PureState::basis(4, idx);
        }
        // q0 = Trent's qubit, q1 = Alice, q2 = claimant
        std::uint64_t idx = (static_cast<std::uint64_t>(claimant_bit) << 2) |
                            (static_cast<std::uint64_t>(rec.alice_bit) << 1);
        return PureState::basis(3, idx);
    }();

    if (tamper_basis_bit) {
        if (*tamper_basis_bit == 1) st.apply(gates::pauli_x(), 0);
    } else {
        st.apply(trent_basis, 0);
    }

    if (variant == VerifyVariant::Swap) {
        // Fresh Haar-random ancillary state on q1.
        const double theta_p = std::acos(1.0 - 2.0 * rng.next_double());
        const double phi_p = 2.0 * kPi * rng.next_double();
        st.apply(gates::bloch_rotation(theta_p, phi_p), 1);
        controlled_swap(st, 2, 0, 1);
        controlled_swap(st, 3, 0, 1);
    } else {
        st.apply(gates::hadamard(), 0, {1});
        st.apply(gates::hadamard(), 0, {2});
    }

    // Trent checks his qubit against the recorded state: outcome 0 in the
    // {|psi_T>, orthogonal} basis means "unchanged".
    st.apply(adjoint(trent_basis), 0);
    RoundOutcome out;
    out.p_pass_exact = st.probability(0, 0);
    out.pass = st.measure(0, rng) == 0;
    return out;
}

VerificationResult verify_banknote(const Banknote& note, const std::vector<int>& claimant_bits,
                                   VerifyVariant variant, RngStream& rng) {
    if (claimant_bits.size() != note.rounds.size())
        throw std::invalid_argument("verify_banknote: claimant bit count must match rounds");
    VerificationResult res;
    res.pass = true;
    for (std::size_t i = 0; i < note.rounds.size(); ++i) {
        RoundOutcome round = run_identification_round(note.rounds[i], claimant_bits[i], variant, rng);
        if (!round.pass) {
            res.pass = false;
            res.first_fail = static_cast<int>(i);
            return res;
        }
    }
    return res;
}

ForgeryEstimate forgery_experiment(int k, std::uint64_t trials, VerifyVariant variant,
                                   BasisPolicy policy, ForgerModel forger, RngStream& rng) {
    if (k < 1) throw std::invalid_argument("forgery_experiment: k must be >= 1");
    if (trials < 1) throw std::invalid_argument("forgery_experiment: trials must be >= 1");
    ForgeryEstimate est;
    est.trials = trials;
    for (std::uint64_t t = 0; t < trials; ++t) {
        Banknote note = mint_banknote(k, policy, t, rng);
        bool all_pass = true;
        for (int i = 0; i < k && all_pass; ++i) {
            int bit;
            std::optional<int> tamper;
            if (forger == ForgerModel::UniformGuess) {
                bit = static_cast<int>(rng.next_below(2));
            } else {
                // Measure-and-resend: read the secret qubit in the
                // computational basis, claim the observed bit and leave
                // the collapsed state behind.
                PureState probe(1);
                probe.apply(gates::bloch_rotation(note.rounds[i].theta, note.rounds[i].phi), 0);
                bit = probe.measure(0, rng);
                tamper = bit;
            }
            all_pass = run_identification_round(note.rounds[i], bit, variant, rng, tamper).pass;
        }
        if (all_pass) ++est.passes;
    }
    est.pass_rate = static_cast<double>(est.passes) / static_cast<double>(trials);
    est.std_err = std::sqrt(est.pass_rate * (1.0 - est.pass_rate) / static_cast<double>(trials));
    return est;
}

namespace {

std::string real17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

std::string to_json(const Banknote& note) {
    std::string out = "{\"serial\": " + std::to_string(note.serial) + ", \"rounds\": [";
    for (std::size_t i = 0; i < note.rounds.size(); ++i) {
        const SubGameRecord& r = note.rounds[i];
        if (i) out += ", ";
        out += "{\"theta\": " + real17(r.theta) + ", \"phi\": " + real17(r.phi) +
               ", \"alice_bit\": " + std::to_string(r.alice_bit) + "}";
    }
    out += "]}";
    return out;
}

Banknote banknote_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    Banknote note;
    note.serial = j.at("serial").get<std::uint64_t>();
    for (const auto& jr : j.at("rounds")) {
        SubGameRecord rec;
        rec.theta = jr.at("theta").get<double>();
        rec.phi = jr.at("phi").get<double>();
        rec.alice_bit = jr.at("alice_bit").get<int>();
        if (rec.alice_bit != 0 && rec.alice_bit != 1)
            throw std::invalid_argument("banknote_from_json: alice_bit must be 0 or 1");
        rec.z = ProjectiveCoord::from_bloch(rec.theta, rec.phi);
        note.rounds.push_back(rec);
    }
    if (note.rounds.empty()) throw std::invalid_argument("banknote_from_json: no rounds");
    return note;
}

} // namespace qglab::games
