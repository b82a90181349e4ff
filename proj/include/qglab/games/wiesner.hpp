/**
 * Wiesner identification games and banknotes.
 *
 * Each sub-game couples the issuer's secret qubit to two classical
 * control bits: Alice's recorded bit and a claimant's bit. In the swap
 * variant both controls drive controlled-swaps of the secret qubit with
 * a fresh ancillary qubit; in the quantized hadamard variant the ancilla
 * is dropped and both controls drive controlled-H. Verification succeeds
 * when the issuer's projective measurement reports the qubit unchanged,
 * which is certain exactly when the two controls agree.
 */
#pragma once

#include "qglab/state.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qglab::games {

/// Point of the Riemann sphere in nonhomogeneous coordinates: the state
/// |0> + z|1> up to scale, with the north pole |1> at z = infinity.
struct ProjectiveCoord {
    Amplitude value{0.0, 0.0};
    bool infinite = false;

    static ProjectiveCoord infinity() { return {Amplitude{0.0, 0.0}, true}; }
    /// z = tan(theta/2) e^{i phi}; theta == pi maps to the pole.
    static ProjectiveCoord from_bloch(double theta, double phi);

    bool operator==(const ProjectiveCoord&) const = default;
};

/// Image of z under the Hadamard tactic: z -> (1-z)/(1+z), with
/// infinity -> -1 and -1 -> infinity.
ProjectiveCoord hadamard_z_action(const ProjectiveCoord& z);

/// One recorded sub-game: the secret state's Bloch angles (z kept
/// alongside) and Alice's move.
struct SubGameRecord {
    double theta = 0.0;
    double phi = 0.0;
    int alice_bit = 0;
    ProjectiveCoord z;

    bool operator==(const SubGameRecord&) const = default;
};

struct Banknote {
    std::uint64_t serial = 0;
    std::vector<SubGameRecord> rounds;

    bool operator==(const Banknote&) const = default;
};

/// How the issuer draws secret states.
enum class BasisPolicy { HaarRandom, ComputationalPair };

enum class VerifyVariant { Swap, Hadamard };

enum class ForgerModel { UniformGuess, MeasureResend };

Banknote mint_banknote(int k, BasisPolicy policy, std::uint64_t serial, RngStream& rng);

struct VerificationResult {
    bool pass = false;
    std::optional<int> first_fail; // 0-based round index
};

VerificationResult verify_banknote(const Banknote& note, const std::vector<int>& claimant_bits,
                                   VerifyVariant variant, RngStream& rng);

/// One sub-game with full control over the state actually sitting on the
/// issuer's line (tamper_basis_bit replaces the recorded state with a
/// computational basis state, as a measure-and-resend attacker leaves
/// behind). Returns the sampled pass bit and the exact pass probability
/// of the final projective check.
struct RoundOutcome {
    bool pass = false;
    double p_pass_exact = 0.0;
};

RoundOutcome run_identification_round(const SubGameRecord& rec, int claimant_bit,
                                      VerifyVariant variant, RngStream& rng,
                                      std::optional<int> tamper_basis_bit = std::nullopt);

struct ForgeryEstimate {
    double pass_rate = 0.0;
    double std_err = 0.0;
    std::uint64_t passes = 0;
    std::uint64_t trials = 0;
};

/// Monte Carlo forgery rate: per trial a fresh banknote is minted and the
/// forger's claimant bits are played through full verification.
ForgeryEstimate forgery_experiment(int k, std::uint64_t trials, VerifyVariant variant,
                                   BasisPolicy policy, ForgerModel forger, RngStream& rng);

/// One-line JSON record {"serial": ..., "rounds": [{"theta": ..., "phi":
/// ..., "alice_bit": ...}, ...]}; fixed field order, reals with 17
/// significant digits.
std::string to_json(const Banknote& note);

/// Inverse of to_json (accepts any standard JSON spelling of the record).
Banknote banknote_from_json(const std::string& text);

} // namespace qglab::games
