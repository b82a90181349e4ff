#include "qglab/gate.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qglab {

namespace {

constexpr Amplitude kI{0.0, 1.0};

SingleQubitGate scale(const SingleQubitGate& g, Amplitude c) {
    return {c * g.m00, c * g.m01, c * g.m10, c * g.m11};
}

SingleQubitGate add(const SingleQubitGate& a, const SingleQubitGate& b) {
    return {a.m00 + b.m00, a.m01 + b.m01, a.m10 + b.m10, a.m11 + b.m11};
}

} // namespace

SingleQubitGate compose(const SingleQubitGate& second, const SingleQubitGate& first) {
    return {
        second.m00 * first.m00 + second.m01 * first.m10,
        second.m00 * first.m01 + second.m01 * first.m11,
        second.m10 * first.m00 + second.m11 * first.m10,
        second.m10 * first.m01 + second.m11 * first.m11,
    };
}

SingleQubitGate adjoint(const SingleQubitGate& g) {
    return {std::conj(g.m00), std::conj(g.m10), std::conj(g.m01), std::conj(g.m11)};
}

double unitarity_defect(const SingleQubitGate& g) {
    SingleQubitGate p = compose(adjoint(g), g);
    double d = std::abs(p.m00 - 1.0);
    d = std::max(d, std::abs(p.m01));
    d = std::max(d, std::abs(p.m10));
    d = std::max(d, std::abs(p.m11 - 1.0));
    return d;
}

bool is_unitary(const SingleQubitGate& g, double tol) {
    return unitarity_defect(g) <= tol;
}

double entry_distance(const SingleQubitGate& a, const SingleQubitGate& b) {
    double d = std::abs(a.m00 - b.m00);
    d = std::max(d, std::abs(a.m01 - b.m01));
    d = std::max(d, std::abs(a.m10 - b.m10));
    d = std::max(d, std::abs(a.m11 - b.m11));
    return d;
}

double phase_distance(const SingleQubitGate& a, const SingleQubitGate& b) {
    // For unitary a = lambda*b, tr(b^dag a) = 2*lambda; if no unit lambda
    // fits, the entrywise distance rejects whatever this estimate is.
    SingleQubitGate p = compose(adjoint(b), a);
    Amplitude lambda = 0.5 * (p.m00 + p.m11);
    double mag = std::abs(lambda);
    if (mag < 1e-300) return entry_distance(a, b);
    lambda /= mag; // nearest unit phase
    return entry_distance(a, scale(b, lambda));
}

bool equal_up_to_phase(const SingleQubitGate& a, const SingleQubitGate& b, double tol) {
    if (tol <= 0.0) throw std::invalid_argument("equal_up_to_phase: tol must be > 0");
    return phase_distance(a, b) <= tol;
}

namespace gates {

SingleQubitGate identity() { return {1.0, 0.0, 0.0, 1.0}; }

SingleQubitGate not_gate() { return {0.0, kI, kI, 0.0}; }

SingleQubitGate hadamard() {
    const Amplitude c = kI / std::sqrt(2.0);
    return {c, c, c, -c};
}

SingleQubitGate root_not(int n) {
    if (n < 1) throw std::out_of_range("root_not: n must be >= 1");
    double phi = std::numbers::pi / (2.0 * n);
    return exp_not(phi);
}

SingleQubitGate exp_not(double phi) {
    return add(scale(identity(), std::cos(phi)), scale(not_gate(), std::sin(phi)));
}

SingleQubitGate exp_h(double phi) {
    return add(scale(identity(), std::cos(phi)), scale(hadamard(), std::sin(phi)));
}

SingleQubitGate not_pow(double r) { return exp_not(r * std::numbers::pi / 2.0); }

SingleQubitGate v_gate(double alpha, double beta) {
    // H*NOT*H = diag(-i, i)
    SingleQubitGate hnh = compose(hadamard(), compose(not_gate(), hadamard()));
    SingleQubitGate axis = add(scale(identity(), std::cos(alpha)), scale(hnh, std::sin(alpha)));
    return add(scale(not_gate(), std::cos(beta)), scale(axis, std::sin(beta)));
}

SingleQubitGate pauli_x() { return {0.0, 1.0, 1.0, 0.0}; }

SingleQubitGate bloch_rotation(double theta, double phi) {
    double c = std::cos(theta / 2.0);
    double s = std::sin(theta / 2.0);
    Amplitude ph = std::polar(1.0, phi);
    return {c, -std::conj(ph) * s, ph * s, c};
}

} // namespace gates

SingleQubitGate make_gate(const std::string& name, const std::vector<double>& params) {
    auto want = [&](std::size_t n) {
        if (params.size() != n)
            throw std::invalid_argument("make_gate: '" + name + "' expects " +
                                        std::to_string(n) + " parameter(s)");
    };
    if (name == "identity") { want(0); return gates::identity(); }
    if (name == "not")      { want(0); return gates::not_gate(); }
    if (name == "hadamard") { want(0); return gates::hadamard(); }
    if (name == "root_not") {
        want(1);
        double n = params[0];
        if (n != std::floor(n)) throw std::invalid_argument("make_gate: root_not n must be integer");
        return gates::root_not(static_cast<int>(n));
    }
    if (name == "exp_not") { want(1); return gates::exp_not(params[0]); }
    if (name == "exp_h")   { want(1); return gates::exp_h(params[0]); }
    if (name == "not_pow") { want(1); return gates::not_pow(params[0]); }
    if (name == "v")       { want(2); return gates::v_gate(params[0], params[1]); }
    throw std::invalid_argument("make_gate: unknown gate name '" + name + "'");
}

} // namespace qglab
