#include "deepqaoa/statevector.hpp"

#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "deepqaoa/detail/summation.hpp"

namespace deepqaoa {

namespace {

void check_dims(int state_bits, int other_bits) {
    if (state_bits != other_bits) {
        throw std::invalid_argument("dimension mismatch: state has " + std::to_string(state_bits) +
                                    " qubits, operand has " + std::to_string(other_bits));
    }
}

}  // namespace

StateVector::StateVector(int n_bits, std::vector<Complex> amplitudes) : n_bits_(n_bits), amps_(std::move(amplitudes)) {
    check_n_bits(n_bits);
    if (amps_.size() != (std::size_t{1} << n_bits)) throw std::invalid_argument("state needs 2^N amplitudes");
    const double norm2 = norm_squared();
    if (!(norm2 > 0.0) || !std::isfinite(norm2)) throw std::invalid_argument("state has zero or non-finite norm");
    const double scale = 1.0 / std::sqrt(norm2);
    for (auto& a : amps_) a *= scale;
}

StateVector StateVector::basis(BitString z) {
    std::vector<Complex> amps(std::size_t{1} << z.n_bits());
    amps[z.index()] = 1.0;
    return StateVector(z.n_bits(), std::move(amps));
}

double StateVector::norm_squared() const {
    return detail::pairwise_sum(amps_.size(), [&](std::size_t i) { return std::norm(amps_[i]); });
}

StateVector plus_state(int n_bits) {
    check_n_bits(n_bits);
    const std::size_t dim = std::size_t{1} << n_bits;
    return StateVector(n_bits, std::vector<Complex>(dim, Complex(1.0 / std::sqrt(static_cast<double>(dim)), 0.0)));
}

std::vector<Complex> phase_separator_diagonal(double gamma, const TracelessObjective& c) {
    std::vector<Complex> diag(c.size());
    for (std::size_t z = 0; z < diag.size(); ++z) {
        const double phase = -gamma * c[z];
        diag[z] = Complex(std::cos(phase), std::sin(phase));
    }
    return diag;
}

void apply_diagonal(StateVector& state, std::span<const Complex> diagonal) {
    if (diagonal.size() != state.size()) throw std::invalid_argument("dimension mismatch: diagonal size");
    auto amps = state.mutable_amplitudes();
    for (std::size_t z = 0; z < amps.size(); ++z) amps[z] *= diagonal[z];
}

void apply_phase_separator(StateVector& state, double gamma, const TracelessObjective& c) {
    check_dims(state.n_bits(), c.n_bits());
    if (gamma == 0.0) return;
    auto amps = state.mutable_amplitudes();
    for (std::size_t z = 0; z < amps.size(); ++z) {
        const double phase = -gamma * c[z];
        amps[z] *= Complex(std::cos(phase), std::sin(phase));
    }
}

void apply_mixer(StateVector& state, double beta) {
    if (beta == 0.0) return;
    const double cb = std::cos(beta);
    const double sb = std::sin(beta);
    auto amps = state.mutable_amplitudes();
    const std::size_t dim = amps.size();
    for (int q = 0; q < state.n_bits(); ++q) {
        const std::size_t stride = std::size_t{1} << q;
        for (std::size_t block = 0; block < dim; block += 2 * stride) {
            for (std::size_t z = block; z < block + stride; ++z) {
                const Complex a0 = amps[z];
                const Complex a1 = amps[z + stride];
                // (cos I + i sin X) on the pair (a0, a1)
                amps[z] = Complex(cb * a0.real() - sb * a1.imag(), cb * a0.imag() + sb * a1.real());
                amps[z + stride] = Complex(cb * a1.real() - sb * a0.imag(), cb * a1.imag() + sb * a0.real());
            }
        }
    }
}

void apply_layer(StateVector& state, LayerParams layer, const TracelessObjective& c) {
    apply_phase_separator(state, layer.gamma, c);
    apply_mixer(state, layer.beta);
}

double expectation(const StateVector& state, const ObjectiveTable& table) {
    check_dims(state.n_bits(), table.n_bits());
    return detail::pairwise_sum(state.size(), [&](std::size_t z) { return table[z] * std::norm(state[z]); });
}

std::vector<Complex> apply_B(std::span<const Complex> psi, int n_bits) {
    check_n_bits(n_bits);
    if (psi.size() != (std::size_t{1} << n_bits)) throw std::invalid_argument("apply_B: dimension mismatch");
    std::vector<Complex> out(psi.size());
    for (std::size_t z = 0; z < psi.size(); ++z) {
        Complex s = 0.0;
        for (int q = 0; q < n_bits; ++q) s += psi[z ^ (std::size_t{1} << q)];
        out[z] = -s;
    }
    return out;
}

std::vector<Complex> apply_B(const StateVector& state) { return apply_B(state.amplitudes(), state.n_bits()); }

double grad_B(const StateVector& state, const ObjectiveTable& table) {
    check_dims(state.n_bits(), table.n_bits());
    // F(beta) = <psi| e^{-i beta B} H e^{i beta B} |psi>, so F'(0) = i <psi|[H, B]|psi> = -2 Im <H psi | B psi>.
    const auto b_psi = apply_B(state);
    const double im = detail::pairwise_sum(state.size(), [&](std::size_t z) {
        return table[z] * (std::conj(state[z]) * b_psi[z]).imag();
    });
    return -2.0 * im;
}

double hess_B(const StateVector& state, const ObjectiveTable& table) {
    check_dims(state.n_bits(), table.n_bits());
    // F''(0) = -<[B,[B,H]]> = 2 <B psi|H|B psi> - 2 Re <B^2 psi|H psi>.
    const auto b_psi = apply_B(state);
    const auto bb_psi = apply_B(b_psi, state.n_bits());
    const double s = detail::pairwise_sum(state.size(), [&](std::size_t z) {
        return table[z] * (std::norm(b_psi[z]) - (std::conj(bb_psi[z]) * state[z]).real());
    });
    return 2.0 * s;
}

double overlap_probability(const StateVector& state, BitString z) {
    check_dims(state.n_bits(), z.n_bits());
    return std::norm(state[z.index()]);
}

void write_state_csv(std::ostream& out, const StateVector& state) {
    std::ostringstream body;
    body.precision(17);
    body << "index,real,imag\n";
    for (std::size_t z = 0; z < state.size(); ++z) body << z << ',' << state[z].real() << ',' << state[z].imag() << '\n';
    out << body.str();
}

}  // namespace deepqaoa
