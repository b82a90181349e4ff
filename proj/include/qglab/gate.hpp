/**
 * Single-qubit gate algebra.
 *
 * The gate set is built on the SU(2) conventions NOT = i*sigma_x and
 * H = (i/sqrt 2) [[1,1],[1,-1]], so NOT^2 = H^2 = -I and global phases
 * accumulate freely; equality of tactics is therefore tested with
 * equal_up_to_phase rather than entrywise comparison.
 */
#pragma once

#include <complex>
#include <string>
#include <vector>

namespace qglab {

using Amplitude = std::complex<double>;

/// Dense 2x2 complex matrix, row-major: [[m00, m01], [m10, m11]].
struct SingleQubitGate {
    Amplitude m00, m01, m10, m11;
};

/// Matrix product second * first (i.e. `second` applied after `first`).
SingleQubitGate compose(const SingleQubitGate& second, const SingleQubitGate& first);

SingleQubitGate adjoint(const SingleQubitGate& g);

/// Max entrywise |M^dag M - I|.
double unitarity_defect(const SingleQubitGate& g);

bool is_unitary(const SingleQubitGate& g, double tol = 1e-10);

/// True iff a = lambda * b for some unit complex lambda, entrywise within tol.
bool equal_up_to_phase(const SingleQubitGate& a, const SingleQubitGate& b, double tol);

/// Max entrywise |a - b|.
double entry_distance(const SingleQubitGate& a, const SingleQubitGate& b);

/// Max entrywise |a - lambda*b| minimized over unit phases lambda.
double phase_distance(const SingleQubitGate& a, const SingleQubitGate& b);

namespace gates {

SingleQubitGate identity();
/// NOT = [[0, i], [i, 0]] = i*sigma_x.
SingleQubitGate not_gate();
/// H = (i/sqrt 2) [[1, 1], [1, -1]].
SingleQubitGate hadamard();
/// n-th root of NOT: I*cos(pi/2n) + NOT*sin(pi/2n). Requires n >= 1.
SingleQubitGate root_not(int n);
/// exp(NOT*phi) = I*cos(phi) + NOT*sin(phi).
SingleQubitGate exp_not(double phi);
/// exp(H*phi) = I*cos(phi) + H*sin(phi).
SingleQubitGate exp_h(double phi);
/// Real power of NOT: exp(NOT * r*pi/2).
SingleQubitGate not_pow(double r);
/// V_alpha(beta) = NOT*cos(beta) + (I*cos(alpha) + H*NOT*H*sin(alpha))*sin(beta).
SingleQubitGate v_gate(double alpha, double beta);

/// Plain sigma_x = [[0,1],[1,0]]; the phase-free bit flip used to build
/// permutation circuits (swap networks) where NOT's i would leak phases.
SingleQubitGate pauli_x();

/// Basis-change gate with column 0 = cos(t/2)|0> + e^{i phi} sin(t/2)|1>,
/// column 1 the orthogonal state; maps the computational basis onto the
/// Bloch direction (theta, phi).
SingleQubitGate bloch_rotation(double theta, double phi);

} // namespace gates

/// Catalog lookup by name. Names: identity, not, hadamard, root_not(n),
/// exp_not(phi), exp_h(phi), not_pow(r), v(alpha, beta). Throws
/// std::invalid_argument on unknown names or wrong parameter counts,
/// std::out_of_range for root_not with n < 1.
SingleQubitGate make_gate(const std::string& name, const std::vector<double>& params = {});

} // namespace qglab
