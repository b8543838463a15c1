#include "qsvm/featuremap.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "qsvm/errors.hpp"

namespace qsvm {

std::string_view to_string(Entanglement e) {
    return e == Entanglement::Linear ? "linear" : "full";
}

Entanglement parse_entanglement(std::string_view name) {
    if (name == "linear") return Entanglement::Linear;
    if (name == "full") return Entanglement::Full;
    throw ConfigError("unknown entanglement pattern '" + std::string(name) +
                      "' (expected linear or full)");
}

PhiFamily phi_family(std::string_view name) {
    if (name == "standard-zz") {
        return PhiFamily{
            "standard-zz",
            [](std::span<const double> x, int k) { return x[k]; },
            [](std::span<const double> x, int j, int k) {
                return (std::numbers::pi - x[j]) * (std::numbers::pi - x[k]);
            },
        };
    }
    throw ConfigError("unknown phi family '" + std::string(name) + "'");
}

FeatureMapSpec::FeatureMapSpec(int num_qubits, int repetitions, Entanglement entanglement,
                               PhiFamily phi, FeatureRange feature_range)
    : num_qubits_(num_qubits),
      repetitions_(repetitions),
      entanglement_(entanglement),
      phi_(std::move(phi)),
      feature_range_(feature_range) {
    if (num_qubits_ < 1 || num_qubits_ > QuantumState::kMaxQubits) {
        throw ConfigError("feature map qubit count must be in [1, 20], got " +
                          std::to_string(num_qubits_));
    }
    if (repetitions_ < 1) throw ConfigError("feature map repetitions must be >= 1");
    if (!phi_.single || !phi_.pair) throw ConfigError("phi family '" + phi_.name + "' is incomplete");
    if (!std::isfinite(feature_range_.lo) || !std::isfinite(feature_range_.hi) ||
        !(feature_range_.lo < feature_range_.hi)) {
        throw ConfigError("feature range must be finite with lo < hi");
    }

    if (entanglement_ == Entanglement::Linear) {
        for (int k = 0; k + 1 < num_qubits_; ++k) pairs_.emplace_back(k, k + 1);
    } else {
        for (int j = 0; j < num_qubits_; ++j)
            for (int k = j + 1; k < num_qubits_; ++k) pairs_.emplace_back(j, k);
    }
}

std::string FeatureMapSpec::id() const {
    char range[96];
    std::snprintf(range, sizeof range, "%.17g,%.17g", feature_range_.lo, feature_range_.hi);
    std::ostringstream out;
    out << "quantum:" << phi_.name << ":q" << num_qubits_ << ":r" << repetitions_ << ':'
        << to_string(entanglement_) << ":[" << range << ']';
    return out.str();
}

FeatureMapSpec default_spec(int dimension) {
    if (dimension < 1 || dimension > QuantumState::kMaxQubits) {
        throw ConfigError("feature dimension must be in [1, 20], got " + std::to_string(dimension));
    }
    return FeatureMapSpec(dimension, 2, Entanglement::Linear, phi_family("standard-zz"));
}

namespace {

void check_input(const FeatureMapSpec& spec, std::span<const double> x, const QuantumState& state) {
    if (static_cast<int>(x.size()) != spec.num_qubits()) {
        throw ArgumentError("feature vector has " + std::to_string(x.size()) +
                            " components, feature map expects " +
                            std::to_string(spec.num_qubits()));
    }
    if (state.num_qubits() != spec.num_qubits()) {
        throw ArgumentError("state qubit count does not match the feature map");
    }
    for (double v : x) {
        if (!std::isfinite(v)) throw ArgumentError("feature vector contains a non-finite value");
    }
}

void apply_phase_layer(const FeatureMapSpec& spec, std::span<const double> x, double sign,
                       QuantumState& state) {
    const auto& phi = spec.phi();
    for (int k = 0; k < spec.num_qubits(); ++k) state.apply_phase_z(k, sign * phi.single(x, k));
    for (const auto& [j, k] : spec.pairs()) state.apply_zz_phase(j, k, sign * phi.pair(x, j, k));
}

}  // namespace

void apply_feature_map(const FeatureMapSpec& spec, std::span<const double> x, QuantumState& state) {
    check_input(spec, x, state);
    for (int r = 0; r < spec.repetitions(); ++r) {
        for (int k = 0; k < spec.num_qubits(); ++k) state.apply_hadamard(k);
        apply_phase_layer(spec, x, +1.0, state);
    }
}

void apply_feature_map_adjoint(const FeatureMapSpec& spec, std::span<const double> x,
                               QuantumState& state) {
    check_input(spec, x, state);
    // The phase layer is diagonal, so its adjoint is the same layer with negated angles.
    for (int r = 0; r < spec.repetitions(); ++r) {
        apply_phase_layer(spec, x, -1.0, state);
        for (int k = 0; k < spec.num_qubits(); ++k) state.apply_hadamard(k);
    }
}

QuantumState encode(const FeatureMapSpec& spec, std::span<const double> x) {
    QuantumState state = QuantumState::zero(spec.num_qubits());
    apply_feature_map(spec, x, state);
    return state;
}

FeatureBounds FeatureBounds::from_rows(const RowMatrix& rows) {
    if (rows.rows() == 0) throw ArgumentError("cannot compute bounds of an empty matrix");
    FeatureBounds b;
    b.min.resize(rows.cols());
    b.max.resize(rows.cols());
    for (Eigen::Index d = 0; d < rows.cols(); ++d) {
        b.min[d] = rows.col(d).minCoeff();
        b.max[d] = rows.col(d).maxCoeff();
    }
    return b;
}

std::vector<double> rescale(std::span<const double> x_raw, const FeatureBounds& bounds,
                            const FeatureRange& range) {
    if (bounds.min.size() != bounds.max.size() || x_raw.size() != bounds.min.size()) {
        throw ArgumentError("rescale: vector has " + std::to_string(x_raw.size()) +
                            " components, bounds have " + std::to_string(bounds.min.size()));
    }
    std::vector<double> out(x_raw.size());
    for (std::size_t d = 0; d < x_raw.size(); ++d) {
        const double lo = bounds.min[d];
        const double hi = bounds.max[d];
        if (!std::isfinite(lo) || !std::isfinite(hi)) throw ArgumentError("rescale: non-finite bounds");
        if (hi < lo) throw ArgumentError("rescale: bound min exceeds max in dimension " + std::to_string(d));
        if (hi == lo) {
            out[d] = range.midpoint();
        } else {
            out[d] = range.lo + (x_raw[d] - lo) / (hi - lo) * (range.hi - range.lo);
        }
    }
    return out;
}

RowMatrix rescale_rows(const RowMatrix& rows, const FeatureBounds& bounds, const FeatureRange& range) {
    RowMatrix out(rows.rows(), rows.cols());
    for (Eigen::Index i = 0; i < rows.rows(); ++i) {
        const auto scaled = rescale(row_span(rows, i), bounds, range);
        std::copy(scaled.begin(), scaled.end(), out.data() + i * out.cols());
    }
    return out;
}

}  // namespace qsvm
