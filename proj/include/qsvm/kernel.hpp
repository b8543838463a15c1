#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>

#include "qsvm/featuremap.hpp"
#include "qsvm/types.hpp"

namespace qsvm {

/// How quantum kernel entries are obtained: exact statevector fidelity, or the
/// frequency of the all-zeros outcome over `shots` simulated measurements.
struct KernelMode {
    bool sampled = false;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;

    static KernelMode exact() { return {}; }
    static KernelMode shots_mode(std::uint64_t shots, std::uint64_t seed) { return {true, shots, seed}; }

    std::string name() const { return sampled ? "shots" : "exact"; }
    bool operator==(const KernelMode&) const = default;
};

struct QuantumKernel {
    FeatureMapSpec spec;
    KernelMode mode;
};

struct RbfKernel {
    double gamma;
};

using KernelDescriptor = std::variant<QuantumKernel, RbfKernel>;

std::string kernel_id(const KernelDescriptor& kernel);
KernelMode kernel_mode(const KernelDescriptor& kernel);

/// Symmetric matrix of pairwise kernel values over one dataset.
struct GramMatrix {
    Eigen::MatrixXd values;
    KernelMode mode;
    std::string kernel_id;

    Eigen::Index size() const { return values.rows(); }
    /// Checksum over the raw doubles, row-major.
    std::string checksum() const;
};

/// Rectangular test x train block of kernel values.
struct KernelBlock {
    Eigen::MatrixXd values;
    KernelMode mode;
    std::string kernel_id;
};

/// |<psi(x)|psi(y)>|^2.
double quantum_kernel_exact(const FeatureMapSpec& spec, std::span<const double> x,
                            std::span<const double> y);

/// Compute-uncompute estimate: run U(y), then U(x)^dagger, sample `shots` outcomes and
/// return the fraction that are all zeros. Reproducible for a fixed seed.
double quantum_kernel_shots(const FeatureMapSpec& spec, std::span<const double> x,
                            std::span<const double> y, std::uint64_t shots, std::uint64_t seed);

/// exp(-gamma * |x - y|^2). Throws ConfigError when gamma <= 0.
double rbf_kernel(double gamma, std::span<const double> x, std::span<const double> y);

/// 1 / (dimension * variance of all feature values); 1.0 for constant data.
double default_rbf_gamma(const RowMatrix& rows);

/// Gram matrix over `rows`. Upper triangle is computed once per unordered pair and
/// mirrored; the diagonal is exactly 1. In shot mode each pair (i, j) draws from its
/// own substream seeded by (seed, i, j), so the result is independent of `threads`.
GramMatrix gram(const KernelDescriptor& kernel, const RowMatrix& rows, std::size_t threads = 0);

/// |test| x |train| block, used to classify unseen rows.
KernelBlock gram_cross(const KernelDescriptor& kernel, const RowMatrix& train_rows,
                       const RowMatrix& test_rows, std::size_t threads = 0);

}  // namespace qsvm
