#include "qsvm/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "qsvm/errors.hpp"
#include "qsvm/parallel.hpp"

namespace qsvm {

namespace {

constexpr double kTau = 1e-12;

class SmoSolver {
public:
    SmoSolver(const Eigen::MatrixXd& kernel, std::span<const int> y, const SvmOptions& opt)
        : k_(kernel), y_(y), c_(opt.C), n_(kernel.rows()), alpha_(n_, 0.0), grad_(n_, -1.0) {}

    BinarySvm run(const SvmOptions& opt) {
        const long max_iter = static_cast<long>(opt.max_passes) * std::max<long>(n_, 1);
        long iter = 0;
        for (;; ++iter) {
            const auto [i, j, gap] = select_pair();
            if (i < 0 || gap < opt.tol) break;
            if (iter >= max_iter) {
                throw SolverError("SMO did not converge after " + std::to_string(max_iter) +
                                  " iterations; worst KKT violation " + std::to_string(gap) +
                                  " (tol " + std::to_string(opt.tol) + ")");
            }
            update(i, j);
        }
        return finish(iter);
    }

private:
    double q(Eigen::Index a, Eigen::Index b) const { return y_[a] * y_[b] * k_(a, b); }

    bool in_up(Eigen::Index t) const {
        return (y_[t] > 0 && alpha_[t] < c_) || (y_[t] < 0 && alpha_[t] > 0.0);
    }
    bool in_low(Eigen::Index t) const {
        return (y_[t] > 0 && alpha_[t] > 0.0) || (y_[t] < 0 && alpha_[t] < c_);
    }

    struct Selection {
        Eigen::Index i;
        Eigen::Index j;
        double gap;
    };

    Selection select_pair() const {
        double up_max = -std::numeric_limits<double>::infinity();
        double low_min = std::numeric_limits<double>::infinity();
        Eigen::Index i = -1;
        Eigen::Index j = -1;
        for (Eigen::Index t = 0; t < n_; ++t) {
            const double v = -y_[t] * grad_[t];
            if (in_up(t) && v > up_max) {
                up_max = v;
                i = t;
            }
            if (in_low(t) && v < low_min) {
                low_min = v;
                j = t;
            }
        }
        if (i < 0 || j < 0) return {-1, -1, 0.0};
        return {i, j, up_max - low_min};
    }

    void update(Eigen::Index i, Eigen::Index j) {
        const double old_i = alpha_[i];
        const double old_j = alpha_[j];
        double& ai = alpha_[i];
        double& aj = alpha_[j];
        double quad = k_(i, i) + k_(j, j) - 2.0 * k_(i, j);
        if (quad <= 0.0) quad = kTau;

        if (y_[i] != y_[j]) {
            const double delta = (-grad_[i] - grad_[j]) / quad;
            const double diff = ai - aj;
            ai += delta;
            aj += delta;
            if (diff > 0.0) {
                if (aj < 0.0) {
                    aj = 0.0;
                    ai = diff;
                }
            } else if (ai < 0.0) {
                ai = 0.0;
                aj = -diff;
            }
            if (diff > 0.0) {
                if (ai > c_) {
                    ai = c_;
                    aj = c_ - diff;
                }
            } else if (aj > c_) {
                aj = c_;
                ai = c_ + diff;
            }
        } else {
            const double delta = (grad_[i] - grad_[j]) / quad;
            const double sum = ai + aj;
            ai -= delta;
            aj += delta;
            if (sum > c_) {
                if (ai > c_) {
                    ai = c_;
                    aj = sum - c_;
                }
                if (aj > c_) {
                    aj = c_;
                    ai = sum - c_;
                }
            } else {
                if (aj < 0.0) {
                    aj = 0.0;
                    ai = sum;
                }
                if (ai < 0.0) {
                    ai = 0.0;
                    aj = sum;
                }
            }
        }

        const double di = ai - old_i;
        const double dj = aj - old_j;
        for (Eigen::Index t = 0; t < n_; ++t) grad_[t] += q(t, i) * di + q(t, j) * dj;
    }

    BinarySvm finish(long iterations) const {
        BinarySvm out;
        out.C = c_;
        out.training_size = static_cast<std::size_t>(n_);
        out.iterations = iterations;

        // Offset rho so that f(x) = sum alpha_t y_t K(x, t) - rho.
        double upper = std::numeric_limits<double>::infinity();
        double lower = -std::numeric_limits<double>::infinity();
        double free_sum = 0.0;
        int free_count = 0;
        for (Eigen::Index t = 0; t < n_; ++t) {
            const double yg = y_[t] * grad_[t];
            if (alpha_[t] >= c_) {
                if (y_[t] < 0) upper = std::min(upper, yg);
                else lower = std::max(lower, yg);
            } else if (alpha_[t] <= 0.0) {
                if (y_[t] > 0) upper = std::min(upper, yg);
                else lower = std::max(lower, yg);
            } else {
                free_sum += yg;
                ++free_count;
            }
        }
        const double rho = free_count > 0 ? free_sum / free_count : 0.5 * (upper + lower);
        out.bias = -rho;

        double alpha_sum = 0.0;
        double grad_dot = 0.0;
        for (Eigen::Index t = 0; t < n_; ++t) {
            if (alpha_[t] > 0.0) {
                out.support_indices.push_back(static_cast<std::size_t>(t));
                out.dual_coefs.push_back(alpha_[t] * y_[t]);
            }
            alpha_sum += alpha_[t];
            grad_dot += alpha_[t] * (grad_[t] + 1.0);  // (Q alpha)_t
        }
        out.objective = alpha_sum - 0.5 * grad_dot;
        return out;
    }

    const Eigen::MatrixXd& k_;
    std::span<const int> y_;
    double c_;
    Eigen::Index n_;
    std::vector<double> alpha_;
    std::vector<double> grad_;
};

}  // namespace

BinarySvm solve_binary(const Eigen::MatrixXd& gram, std::span<const int> labels,
                       const SvmOptions& options) {
    if (gram.rows() != gram.cols()) throw ArgumentError("solve_binary: Gram matrix must be square");
    if (static_cast<std::size_t>(gram.rows()) != labels.size()) {
        throw ArgumentError("solve_binary: " + std::to_string(labels.size()) + " labels for a " +
                            std::to_string(gram.rows()) + "x" + std::to_string(gram.rows()) +
                            " Gram matrix");
    }
    if (!(options.C > 0.0) || !std::isfinite(options.C)) throw ConfigError("SVM C must be positive");
    if (!(options.tol > 0.0)) throw ConfigError("SVM tol must be positive");
    if (options.max_passes < 1) throw ConfigError("SVM max_passes must be >= 1");
    bool has_pos = false;
    bool has_neg = false;
    for (int y : labels) {
        if (y == 1) has_pos = true;
        else if (y == -1) has_neg = true;
        else throw ArgumentError("solve_binary: labels must be +1 or -1");
    }
    if (!has_pos || !has_neg) throw ArgumentError("solve_binary: labels contain a single class");

    return SmoSolver(gram, labels, options).run(options);
}

double decision_value(const BinarySvm& model, std::span<const double> kernel_row) {
    if (kernel_row.size() != model.training_size) {
        throw ArgumentError("decision_value: kernel row has " + std::to_string(kernel_row.size()) +
                            " entries, model was fit on " + std::to_string(model.training_size));
    }
    double f = model.bias;
    for (std::size_t s = 0; s < model.dual_coefs.size(); ++s) {
        f += model.dual_coefs[s] * kernel_row[model.support_indices[s]];
    }
    return f;
}

double psd_jitter(const GramMatrix& gram) {
    if (!gram.mode.sampled) return 0.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram.values, Eigen::EigenvaluesOnly);
    const double lambda_min = eig.eigenvalues().minCoeff();
    return std::max(0.0, -lambda_min) + 1e-8;
}

MultiClassSvm fit_multiclass(const GramMatrix& gram, std::span<const int> labels,
                             const SvmOptions& options, std::size_t threads) {
    const auto m = static_cast<std::size_t>(gram.size());
    if (labels.size() != m) {
        throw ArgumentError("fit_multiclass: " + std::to_string(labels.size()) + " labels for " +
                            std::to_string(m) + " Gram rows");
    }
    const std::set<int> distinct(labels.begin(), labels.end());
    if (distinct.size() < 2) throw ArgumentError("fit_multiclass: need at least two classes");

    MultiClassSvm out;
    out.classes.assign(distinct.begin(), distinct.end());
    out.kernel_id = gram.kernel_id;
    out.options = options;
    out.training_size = m;
    out.jitter = psd_jitter(gram);

    for (std::size_t a = 0; a < out.classes.size(); ++a)
        for (std::size_t b = a + 1; b < out.classes.size(); ++b)
            out.pairwise.push_back({out.classes[a], out.classes[b], {}});

    parallel_for(out.pairwise.size(), threads, [&](std::size_t p) {
        auto& pair = out.pairwise[p];
        std::vector<std::size_t> rows;
        std::vector<int> y;
        for (std::size_t t = 0; t < m; ++t) {
            if (labels[t] == pair.class_a || labels[t] == pair.class_b) {
                rows.push_back(t);
                y.push_back(labels[t] == pair.class_a ? 1 : -1);
            }
        }
        const auto n = static_cast<Eigen::Index>(rows.size());
        Eigen::MatrixXd sub(n, n);
        for (Eigen::Index r = 0; r < n; ++r)
            for (Eigen::Index c = 0; c < n; ++c)
                sub(r, c) = gram.values(static_cast<Eigen::Index>(rows[r]),
                                        static_cast<Eigen::Index>(rows[c]));
        sub.diagonal().array() += out.jitter;

        try {
            pair.model = solve_binary(sub, y, options);
        } catch (const SolverError& e) {
            throw SolverError("class pair (" + std::to_string(pair.class_a) + ", " +
                              std::to_string(pair.class_b) + "): " + e.what());
        }
        for (auto& idx : pair.model.support_indices) idx = rows[idx];
        pair.model.training_size = m;
    });
    return out;
}

Prediction predict(const MultiClassSvm& model, const KernelBlock& cross_block) {
    if (cross_block.kernel_id != model.kernel_id) {
        throw ConfigError("kernel mismatch: model was fit with '" + model.kernel_id +
                          "', cross block uses '" + cross_block.kernel_id + "'");
    }
    if (static_cast<std::size_t>(cross_block.values.cols()) != model.training_size) {
        throw ArgumentError("predict: cross block has " +
                            std::to_string(cross_block.values.cols()) + " columns, model has " +
                            std::to_string(model.training_size) + " training rows");
    }

    const std::size_t k = model.classes.size();
    auto class_index = [&](int label) {
        return static_cast<std::size_t>(
            std::lower_bound(model.classes.begin(), model.classes.end(), label) -
            model.classes.begin());
    };

    const Eigen::Index rows = cross_block.values.rows();
    Prediction out;
    out.labels.resize(rows);
    out.votes.assign(rows, std::vector<int>(k, 0));

    std::vector<double> row(model.training_size);
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < row.size(); ++c) row[c] = cross_block.values(r, static_cast<Eigen::Index>(c));
        std::vector<double> strength(k, 0.0);
        auto& votes = out.votes[r];
        for (const auto& pair : model.pairwise) {
            const double f = decision_value(pair.model, row);
            const std::size_t winner = class_index(f > 0.0 ? pair.class_a : pair.class_b);
            ++votes[winner];
            strength[winner] += std::abs(f);
        }
        std::size_t best = 0;
        for (std::size_t c = 1; c < k; ++c) {
            if (votes[c] > votes[best] || (votes[c] == votes[best] && strength[c] > strength[best])) {
                best = c;
            }
        }
        out.labels[r] = model.classes[best];
    }
    return out;
}

}  // namespace qsvm
