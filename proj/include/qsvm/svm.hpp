#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qsvm/kernel.hpp"

namespace qsvm {

struct SvmOptions {
    double C = 1.0;
    /// Stop when the maximal KKT violation m(alpha) - M(alpha) drops below tol.
    double tol = 1e-3;
    /// One pass is n pair updates, n = problem size.
    int max_passes = 10000;
};

/// Two-class kernel SVM in dual form: f(x) = sum_i dual_coefs[i] * K(x, sv_i) + bias.
struct BinarySvm {
    std::vector<double> dual_coefs;           // alpha_i * y_i, support vectors only
    std::vector<std::size_t> support_indices;  // into the training set the model was fit on
    double bias = 0.0;
    double C = 1.0;
    std::size_t training_size = 0;
    double objective = 0.0;  // sum(alpha) - 1/2 alpha^T Q alpha at the solution
    long iterations = 0;
};

/// SMO with maximal-violating-pair working set selection.
///
/// `gram` must be square and symmetric; `labels` are +1/-1. Throws ArgumentError when
/// only one class is present or sizes disagree, SolverError on non-convergence
/// (the message reports the remaining KKT violation).
BinarySvm solve_binary(const Eigen::MatrixXd& gram, std::span<const int> labels,
                       const SvmOptions& options = {});

/// `kernel_row` holds K(x, t) for every training row t.
double decision_value(const BinarySvm& model, std::span<const double> kernel_row);

struct PairwiseSvm {
    int class_a = 0;  // +1 side
    int class_b = 0;  // -1 side
    BinarySvm model;  // support_indices refer to the full training set
};

/// One-vs-one ensemble over ascending class labels.
struct MultiClassSvm {
    std::vector<int> classes;
    std::vector<PairwiseSvm> pairwise;
    std::string kernel_id;
    SvmOptions options;
    double jitter = 0.0;
    std::size_t training_size = 0;
};

/// Diagonal shift that makes a sampled Gram matrix numerically PSD:
/// max(0, -lambda_min) + 1e-8 for shot-mode matrices, 0 for exact ones.
double psd_jitter(const GramMatrix& gram);

/// Fit one binary SVM per class pair on the corresponding principal submatrix.
MultiClassSvm fit_multiclass(const GramMatrix& gram, std::span<const int> labels,
                             const SvmOptions& options = {}, std::size_t threads = 0);

struct Prediction {
    std::vector<int> labels;
    /// votes[row][c] counts pairwise wins of classes[c].
    std::vector<std::vector<int>> votes;
};

/// Majority vote over pairwise decision signs. Ties go to the class with the larger
/// summed |decision value| among its winning votes, then to the lowest label.
/// Throws ConfigError when the block was produced by a different kernel.
Prediction predict(const MultiClassSvm& model, const KernelBlock& cross_block);

}  // namespace qsvm
