#include "qsvm/statevec.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "qsvm/errors.hpp"
#include "qsvm/random.hpp"

namespace qsvm {

namespace {
std::atomic<std::uint64_t> g_instances{0};
}  // namespace

std::uint64_t QuantumState::instances_created() { return g_instances.load(); }

QuantumState QuantumState::zero(int num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw ConfigError("qubit count must be in [1, " + std::to_string(kMaxQubits) +
                          "], got " + std::to_string(num_qubits));
    }
    std::vector<Complex> amps(std::size_t{1} << num_qubits, Complex{0.0, 0.0});
    amps[0] = Complex{1.0, 0.0};
    g_instances.fetch_add(1, std::memory_order_relaxed);
    return QuantumState(num_qubits, std::move(amps));
}

QuantumState QuantumState::from_amplitudes(std::vector<Complex> amplitudes) {
    const std::size_t n = amplitudes.size();
    if (n < 2 || !std::has_single_bit(n)) {
        throw ArgumentError("amplitude count must be a power of two >= 2, got " +
                            std::to_string(n));
    }
    const int qubits = std::countr_zero(n);
    if (qubits > kMaxQubits) {
        throw ConfigError("state exceeds the " + std::to_string(kMaxQubits) + "-qubit cap");
    }
    return QuantumState(qubits, std::move(amplitudes));
}

void QuantumState::check_qubit(int qubit) const {
    if (qubit < 0 || qubit >= num_qubits_) {
        throw ArgumentError("qubit index " + std::to_string(qubit) + " out of range for " +
                            std::to_string(num_qubits_) + "-qubit state");
    }
}

double QuantumState::norm_squared() const {
    double total = 0.0;
    for (const auto& a : amplitudes_) total += std::norm(a);
    return total;
}

QuantumState& QuantumState::apply_hadamard(int qubit) {
    check_qubit(qubit);
    const std::size_t stride = std::size_t{1} << qubit;
    const double s = 1.0 / std::numbers::sqrt2;
    const std::size_t dim = amplitudes_.size();
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t offset = 0; offset < stride; ++offset) {
            const std::size_t i0 = base + offset;
            const std::size_t i1 = i0 + stride;
            const Complex a0 = amplitudes_[i0];
            const Complex a1 = amplitudes_[i1];
            amplitudes_[i0] = s * (a0 + a1);
            amplitudes_[i1] = s * (a0 - a1);
        }
    }
    return *this;
}

QuantumState& QuantumState::apply_phase_z(int qubit, double angle) {
    check_qubit(qubit);
    if (!std::isfinite(angle)) throw ArgumentError("phase angle must be finite");
    const Complex plus = std::polar(1.0, angle);
    const Complex minus = std::conj(plus);
    const std::size_t mask = std::size_t{1} << qubit;
    for (std::size_t b = 0; b < amplitudes_.size(); ++b) {
        amplitudes_[b] *= (b & mask) ? minus : plus;
    }
    return *this;
}

QuantumState& QuantumState::apply_zz_phase(int qubit_a, int qubit_b, double angle) {
    check_qubit(qubit_a);
    check_qubit(qubit_b);
    if (qubit_a == qubit_b) throw ArgumentError("zz phase needs two distinct qubits");
    if (!std::isfinite(angle)) throw ArgumentError("phase angle must be finite");
    const Complex same = std::polar(1.0, angle);
    const Complex differ = std::conj(same);
    // Parity of the two bits selects the phase, which makes the gate symmetric bit-for-bit.
    const std::size_t mask = (std::size_t{1} << qubit_a) | (std::size_t{1} << qubit_b);
    for (std::size_t b = 0; b < amplitudes_.size(); ++b) {
        const bool odd = std::popcount(b & mask) == 1;
        amplitudes_[b] *= odd ? differ : same;
    }
    return *this;
}

std::vector<double> QuantumState::probabilities() const {
    std::vector<double> probs(amplitudes_.size());
    std::transform(amplitudes_.begin(), amplitudes_.end(), probs.begin(),
                   [](const Complex& a) { return std::norm(a); });
    return probs;
}

std::uint64_t QuantumState::sample_count(std::uint64_t outcome, std::uint64_t shots,
                                         std::uint64_t seed) const {
    if (outcome >= amplitudes_.size()) throw ArgumentError("outcome index out of range");
    std::vector<double> cdf = probabilities();
    for (std::size_t k = 1; k < cdf.size(); ++k) cdf[k] += cdf[k - 1];
    const double total = cdf.back();

    Rng rng(seed);
    std::uint64_t hits = 0;
    for (std::uint64_t s = 0; s < shots; ++s) {
        // First index whose cumulative mass exceeds u; zero-mass outcomes are never hit.
        const double u = rng.uniform() * total;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        auto index = static_cast<std::uint64_t>(std::distance(cdf.begin(), it));
        if (index >= cdf.size()) index = cdf.size() - 1;
        if (index == outcome) ++hits;
    }
    return hits;
}

Complex inner_product(const QuantumState& a, const QuantumState& b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw ArgumentError("inner product of states with " + std::to_string(a.num_qubits()) +
                            " and " + std::to_string(b.num_qubits()) + " qubits");
    }
    Complex total{0.0, 0.0};
    const auto lhs = a.amplitudes();
    const auto rhs = b.amplitudes();
    for (std::size_t k = 0; k < lhs.size(); ++k) total += std::conj(lhs[k]) * rhs[k];
    return total;
}

double fidelity(const QuantumState& a, const QuantumState& b) {
    return std::norm(inner_product(a, b));
}

}  // namespace qsvm
