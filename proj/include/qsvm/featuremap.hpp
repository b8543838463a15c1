#pragma once

#include <functional>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qsvm/statevec.hpp"
#include "qsvm/types.hpp"

namespace qsvm {

enum class Entanglement { Linear, Full };

std::string_view to_string(Entanglement e);
Entanglement parse_entanglement(std::string_view name);

/// Target interval for rescaled features (rotation angles).
struct FeatureRange {
    double lo = 0.0;
    double hi = std::numbers::pi;

    double midpoint() const { return 0.5 * (lo + hi); }
    bool operator==(const FeatureRange&) const = default;
};

/// Angle functions for the single-qubit and two-qubit phase terms of the encoding.
struct PhiFamily {
    using SingleFn = std::function<double(std::span<const double> x, int k)>;
    using PairFn = std::function<double(std::span<const double> x, int j, int k)>;

    std::string name;
    SingleFn single;
    PairFn pair;
};

/// Built-in families by name. "standard-zz": phi_k = x_k, phi_jk = (pi - x_j)(pi - x_k).
PhiFamily phi_family(std::string_view name);

/// Shape of the data-encoding circuit
///
///     |psi(x)> = prod_{reps} [ U(x) H^n ] |0^n>,
///     U(x) = exp(i sum_k phi_k(x) Z_k + i sum_{(j,k)} phi_jk(x) Z_j Z_k).
///
/// Interactions are limited to one- and two-qubit terms.
class FeatureMapSpec {
public:
    FeatureMapSpec(int num_qubits, int repetitions, Entanglement entanglement,
                   PhiFamily phi, FeatureRange feature_range = {});

    int num_qubits() const { return num_qubits_; }
    int repetitions() const { return repetitions_; }
    Entanglement entanglement() const { return entanglement_; }
    const PhiFamily& phi() const { return phi_; }
    const FeatureRange& feature_range() const { return feature_range_; }

    /// Entangled pairs (j < k), duplicate free, in application order.
    const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }

    /// Stable identifier covering every field that changes the kernel.
    std::string id() const;

private:
    int num_qubits_;
    int repetitions_;
    Entanglement entanglement_;
    PhiFamily phi_;
    FeatureRange feature_range_;
    std::vector<std::pair<int, int>> pairs_;
};

/// reps = 2, linear entanglement, standard-zz angles, range [0, pi].
FeatureMapSpec default_spec(int dimension);

/// Apply the encoding circuit for x to `state` (which must have spec.num_qubits()).
void apply_feature_map(const FeatureMapSpec& spec, std::span<const double> x, QuantumState& state);

/// Apply the adjoint of the encoding circuit for x.
void apply_feature_map_adjoint(const FeatureMapSpec& spec, std::span<const double> x,
                               QuantumState& state);

/// |psi(x)>. Pure: identical (spec, x) give bit-identical amplitudes.
QuantumState encode(const FeatureMapSpec& spec, std::span<const double> x);

/// Per-dimension bounds of the raw features, used for affine rescaling.
struct FeatureBounds {
    std::vector<double> min;
    std::vector<double> max;

    static FeatureBounds from_rows(const RowMatrix& rows);
    std::size_t dimension() const { return min.size(); }
};

/// Affine map of each component from [min_d, max_d] onto `range`. Values outside the
/// source bounds map outside the range (no clamping); a constant dimension maps to
/// the range midpoint.
std::vector<double> rescale(std::span<const double> x_raw, const FeatureBounds& bounds,
                            const FeatureRange& range);

inline std::vector<double> rescale(std::span<const double> x_raw, const FeatureBounds& bounds,
                                   const FeatureMapSpec& spec) {
    return rescale(x_raw, bounds, spec.feature_range());
}

RowMatrix rescale_rows(const RowMatrix& rows, const FeatureBounds& bounds,
                       const FeatureRange& range);

}  // namespace qsvm
