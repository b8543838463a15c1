#pragma once

#include <span>
#include <vector>

#include "qsvm/types.hpp"

namespace qsvm {

/// Fitted principal component projection from D inputs to d outputs.
struct PcaModel {
    int input_dim = 0;
    int output_dim = 0;
    Eigen::VectorXd mean;                // D
    Eigen::MatrixXd components;          // d x D, orthonormal rows
    Eigen::VectorXd explained_variance;  // d, nonincreasing, sample variance (m - 1 denominator)
};

/// Fit on the rows of `data` (m x D). Components are the top-d right singular vectors
/// of the centered data, each signed so its largest-magnitude entry is positive
/// (first such entry on ties).
///
/// Throws ArgumentError when m < 2, ConfigError when d is outside [1, min(m - 1, D)],
/// SolverError when every row is identical.
PcaModel fit_pca(const RowMatrix& data, int output_dim);

/// components * (x - mean).
std::vector<double> transform(const PcaModel& model, std::span<const double> x);
RowMatrix transform_rows(const PcaModel& model, const RowMatrix& data);

/// mean + components^T * z. Exact inverse of transform only when d == D.
std::vector<double> inverse_transform(const PcaModel& model, std::span<const double> z);

}  // namespace qsvm
