#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace qsvm {

using Complex = std::complex<double>;

/// Dense pure state of N qubits, 1 <= N <= kMaxQubits.
///
/// Basis index b encodes qubit k in bit k (qubit 0 is the least significant bit).
/// Gates mutate in place and return *this; copy the state first to keep the input.
///
/// Phase gates follow the positive-exponent convention exp(+i * angle * Z...),
/// not the RZ(theta) = exp(-i * theta * Z / 2) convention.
class QuantumState {
public:
    static constexpr int kMaxQubits = 20;

    /// |0...0> on num_qubits qubits. Throws ConfigError outside [1, kMaxQubits].
    static QuantumState zero(int num_qubits);

    /// Wrap explicit amplitudes. Length must be a power of two within the qubit cap.
    /// The caller is responsible for normalization.
    static QuantumState from_amplitudes(std::vector<Complex> amplitudes);

    int num_qubits() const { return num_qubits_; }
    std::size_t dimension() const { return amplitudes_.size(); }
    std::span<const Complex> amplitudes() const { return amplitudes_; }
    const Complex& operator[](std::size_t index) const { return amplitudes_[index]; }

    double norm_squared() const;

    QuantumState& apply_hadamard(int qubit);

    /// exp(+i * angle * Z_qubit).
    QuantumState& apply_phase_z(int qubit, double angle);

    /// exp(+i * angle * Z_a Z_b). Symmetric in (qubit_a, qubit_b).
    QuantumState& apply_zz_phase(int qubit_a, int qubit_b, double angle);

    /// Probability of each computational basis outcome.
    std::vector<double> probabilities() const;

    /// Draw `shots` basis outcomes from the Born distribution and count how many
    /// equal `outcome`. Deterministic for a fixed seed.
    std::uint64_t sample_count(std::uint64_t outcome, std::uint64_t shots,
                               std::uint64_t seed) const;

    bool operator==(const QuantumState&) const = default;

    /// Number of states created through zero() in this process. Lets tests confirm
    /// that a code path never touches the simulator.
    static std::uint64_t instances_created();

private:
    QuantumState(int num_qubits, std::vector<Complex> amplitudes)
        : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {}

    void check_qubit(int qubit) const;

    int num_qubits_;
    std::vector<Complex> amplitudes_;
};

inline QuantumState zero_state(int num_qubits) { return QuantumState::zero(num_qubits); }

/// <a|b> = sum conj(a_k) b_k. Throws ArgumentError on mismatched qubit counts.
Complex inner_product(const QuantumState& a, const QuantumState& b);

/// |<a|b>|^2.
double fidelity(const QuantumState& a, const QuantumState& b);

}  // namespace qsvm
