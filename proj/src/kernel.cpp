#include "qsvm/kernel.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

#include "qsvm/checksum.hpp"
#include "qsvm/errors.hpp"
#include "qsvm/parallel.hpp"
#include "qsvm/random.hpp"
#include "qsvm/statevec.hpp"

namespace qsvm {

namespace {

// Separates cross-block substreams from Gram substreams sharing a seed.
constexpr std::uint64_t kCrossStream = 0x63726f7373ULL;

void check_dimension(const FeatureMapSpec& spec, std::span<const double> v) {
    if (static_cast<int>(v.size()) != spec.num_qubits()) {
        throw ArgumentError("feature vector has " + std::to_string(v.size()) +
                            " components, kernel expects " + std::to_string(spec.num_qubits()));
    }
}

void check_rows(const RowMatrix& rows, const char* what) {
    if (rows.rows() == 0) throw ArgumentError(std::string(what) + ": empty dataset");
}

double compute_uncompute(const FeatureMapSpec& spec, const QuantumState& encoded_y,
                         std::span<const double> x, std::uint64_t shots, std::uint64_t seed) {
    QuantumState state = encoded_y;
    apply_feature_map_adjoint(spec, x, state);
    const std::uint64_t zeros = state.sample_count(0, shots, seed);
    return static_cast<double>(zeros) / static_cast<double>(shots);
}

std::vector<QuantumState> encode_rows(const FeatureMapSpec& spec, const RowMatrix& rows,
                                      std::size_t threads) {
    std::vector<QuantumState> states(rows.rows(), QuantumState::zero(spec.num_qubits()));
    parallel_for(states.size(), threads, [&](std::size_t i) {
        apply_feature_map(spec, row_span(rows, static_cast<Eigen::Index>(i)), states[i]);
    });
    return states;
}

void check_shots(const KernelMode& mode) {
    if (mode.sampled && mode.shots < 1) throw ArgumentError("shot count must be >= 1");
}

void check_gamma(double gamma) {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ConfigError("rbf gamma must be positive");
}

}  // namespace

std::string kernel_id(const KernelDescriptor& kernel) {
    if (const auto* q = std::get_if<QuantumKernel>(&kernel)) return q->spec.id();
    char buf[64];
    std::snprintf(buf, sizeof buf, "rbf:gamma=%.17g", std::get<RbfKernel>(kernel).gamma);
    return buf;
}

KernelMode kernel_mode(const KernelDescriptor& kernel) {
    if (const auto* q = std::get_if<QuantumKernel>(&kernel)) return q->mode;
    return KernelMode::exact();
}

std::string GramMatrix::checksum() const {
    Fnv1a h;
    for (Eigen::Index i = 0; i < values.rows(); ++i)
        for (Eigen::Index j = 0; j < values.cols(); ++j) h.update(values(i, j));
    return h.hex();
}

double quantum_kernel_exact(const FeatureMapSpec& spec, std::span<const double> x,
                            std::span<const double> y) {
    check_dimension(spec, x);
    check_dimension(spec, y);
    return fidelity(encode(spec, x), encode(spec, y));
}

double quantum_kernel_shots(const FeatureMapSpec& spec, std::span<const double> x,
                            std::span<const double> y, std::uint64_t shots, std::uint64_t seed) {
    if (shots < 1) throw ArgumentError("shot count must be >= 1");
    check_dimension(spec, x);
    check_dimension(spec, y);
    return compute_uncompute(spec, encode(spec, y), x, shots, seed);
}

double rbf_kernel(double gamma, std::span<const double> x, std::span<const double> y) {
    check_gamma(gamma);
    if (x.size() != y.size()) throw ArgumentError("rbf kernel: dimension mismatch");
    double dist2 = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double d = x[k] - y[k];
        dist2 += d * d;
    }
    return std::exp(-gamma * dist2);
}

double default_rbf_gamma(const RowMatrix& rows) {
    check_rows(rows, "default_rbf_gamma");
    const double mean = rows.mean();
    const double var = (rows.array() - mean).square().mean();
    if (!(var > 0.0)) return 1.0;
    return 1.0 / (static_cast<double>(rows.cols()) * var);
}

GramMatrix gram(const KernelDescriptor& kernel, const RowMatrix& rows, std::size_t threads) {
    check_rows(rows, "gram");
    const Eigen::Index m = rows.rows();
    GramMatrix out{Eigen::MatrixXd::Identity(m, m), kernel_mode(kernel), kernel_id(kernel)};
    auto& v = out.values;

    if (const auto* q = std::get_if<QuantumKernel>(&kernel)) {
        check_shots(q->mode);
        if (rows.cols() != q->spec.num_qubits()) {
            throw ArgumentError("gram: rows have " + std::to_string(rows.cols()) +
                                " features, feature map expects " +
                                std::to_string(q->spec.num_qubits()));
        }
        const auto states = encode_rows(q->spec, rows, threads);
        parallel_for(static_cast<std::size_t>(m), threads, [&](std::size_t i) {
            const auto ii = static_cast<Eigen::Index>(i);
            for (Eigen::Index j = ii + 1; j < m; ++j) {
                v(ii, j) = q->mode.sampled
                               ? compute_uncompute(q->spec, states[j], row_span(rows, ii),
                                                   q->mode.shots,
                                                   substream_seed(q->mode.seed, i, j))
                               : fidelity(states[i], states[j]);
            }
        });
    } else {
        const double gamma = std::get<RbfKernel>(kernel).gamma;
        check_gamma(gamma);
        parallel_for(static_cast<std::size_t>(m), threads, [&](std::size_t i) {
            const auto ii = static_cast<Eigen::Index>(i);
            for (Eigen::Index j = ii + 1; j < m; ++j)
                v(ii, j) = rbf_kernel(gamma, row_span(rows, ii), row_span(rows, j));
        });
    }

    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = i + 1; j < m; ++j) v(j, i) = v(i, j);
    return out;
}

KernelBlock gram_cross(const KernelDescriptor& kernel, const RowMatrix& train_rows,
                       const RowMatrix& test_rows, std::size_t threads) {
    check_rows(train_rows, "gram_cross (train)");
    check_rows(test_rows, "gram_cross (test)");
    if (train_rows.cols() != test_rows.cols()) {
        throw ArgumentError("gram_cross: train and test feature dimensions differ");
    }
    const Eigen::Index n_test = test_rows.rows();
    const Eigen::Index n_train = train_rows.rows();
    KernelBlock out{Eigen::MatrixXd(n_test, n_train), kernel_mode(kernel), kernel_id(kernel)};
    auto& v = out.values;

    if (const auto* q = std::get_if<QuantumKernel>(&kernel)) {
        check_shots(q->mode);
        if (train_rows.cols() != q->spec.num_qubits()) {
            throw ArgumentError("gram_cross: feature dimension does not match the feature map");
        }
        const auto train_states = encode_rows(q->spec, train_rows, threads);
        if (q->mode.sampled) {
            const std::uint64_t seed = q->mode.seed ^ kCrossStream;
            parallel_for(static_cast<std::size_t>(n_test), threads, [&](std::size_t i) {
                const auto ii = static_cast<Eigen::Index>(i);
                for (Eigen::Index j = 0; j < n_train; ++j) {
                    v(ii, j) = compute_uncompute(q->spec, train_states[j], row_span(test_rows, ii),
                                                 q->mode.shots, substream_seed(seed, i, j));
                }
            });
        } else {
            const auto test_states = encode_rows(q->spec, test_rows, threads);
            parallel_for(static_cast<std::size_t>(n_test), threads, [&](std::size_t i) {
                for (Eigen::Index j = 0; j < n_train; ++j)
                    v(static_cast<Eigen::Index>(i), j) = fidelity(test_states[i], train_states[j]);
            });
        }
    } else {
        const double gamma = std::get<RbfKernel>(kernel).gamma;
        check_gamma(gamma);
        parallel_for(static_cast<std::size_t>(n_test), threads, [&](std::size_t i) {
            const auto ii = static_cast<Eigen::Index>(i);
            for (Eigen::Index j = 0; j < n_train; ++j)
                v(ii, j) = rbf_kernel(gamma, row_span(test_rows, ii), row_span(train_rows, j));
        });
    }
    return out;
}

}  // namespace qsvm
