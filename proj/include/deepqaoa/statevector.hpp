#ifndef DEEPQAOA_STATEVECTOR_HPP_
#define DEEPQAOA_STATEVECTOR_HPP_

#include <complex>
#include <iosfwd>
#include <span>
#include <vector>

#include "deepqaoa/objective.hpp"

namespace deepqaoa {

using Complex = std::complex<double>;

/// Pure state on N qubits: 2^N amplitudes, indexed by bit string.
class StateVector {
public:
    /// Takes ownership of the amplitudes and normalizes them. Throws on size mismatch or zero norm.
    StateVector(int n_bits, std::vector<Complex> amplitudes);

    static StateVector basis(BitString z);

    int n_bits() const { return n_bits_; }
    std::size_t size() const { return amps_.size(); }
    std::span<const Complex> amplitudes() const { return amps_; }
    std::span<Complex> mutable_amplitudes() { return amps_; }
    const Complex& operator[](std::size_t z) const { return amps_[z]; }

    double norm_squared() const;

private:
    int n_bits_;
    std::vector<Complex> amps_;
};

/// One QAOA layer (beta for the mixer, gamma for the phase separator).
struct LayerParams {
    double beta = 0.0;
    double gamma = 0.0;

    friend bool operator==(const LayerParams&, const LayerParams&) = default;
};

StateVector plus_state(int n_bits);

/// amplitude_z <- exp(-i gamma c(z)) amplitude_z.
void apply_phase_separator(StateVector& state, double gamma, const TracelessObjective& c);

/// Precomputed diagonal exp(-i gamma c(z)) for repeated use with the same gamma.
std::vector<Complex> phase_separator_diagonal(double gamma, const TracelessObjective& c);
void apply_diagonal(StateVector& state, std::span<const Complex> diagonal);

/// exp(-i beta B) with B = -sum_n X_n, applied as N single-qubit rotations cos(beta) I + i sin(beta) X.
void apply_mixer(StateVector& state, double beta);

/// U_B(beta) U_C(gamma): the phase separator acts first.
void apply_layer(StateVector& state, LayerParams layer, const TracelessObjective& c);

/// F = sum_z f(z) |amplitude_z|^2.
double expectation(const StateVector& state, const ObjectiveTable& table);

/// (B psi)_z = -sum_n psi_{z xor e_n}. Not normalized.
std::vector<Complex> apply_B(std::span<const Complex> psi, int n_bits);
std::vector<Complex> apply_B(const StateVector& state);

/// d/dbeta F(exp(i beta B) psi) at beta = 0.
double grad_B(const StateVector& state, const ObjectiveTable& table);

/// d^2/dbeta^2 F(exp(i beta B) psi) at beta = 0.
double hess_B(const StateVector& state, const ObjectiveTable& table);

double overlap_probability(const StateVector& state, BitString z);

/// Debug dump: "index,real,imag" rows.
void write_state_csv(std::ostream& out, const StateVector& state);

}  // namespace deepqaoa

#endif  // DEEPQAOA_STATEVECTOR_HPP_
