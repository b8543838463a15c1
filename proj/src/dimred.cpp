#include "qsvm/dimred.hpp"

#include <cmath>
#include <string>

#include "qsvm/errors.hpp"

namespace qsvm {

namespace {

void fix_sign(Eigen::MatrixXd& components, Eigen::Index row) {
    auto component = components.row(row);
    Eigen::Index best = 0;
    for (Eigen::Index k = 1; k < component.size(); ++k) {
        if (std::abs(component(k)) > std::abs(component(best))) best = k;
    }
    if (component(best) < 0.0) component *= -1.0;
}

}  // namespace

PcaModel fit_pca(const RowMatrix& data, int output_dim) {
    const Eigen::Index m = data.rows();
    const Eigen::Index dim = data.cols();
    if (m < 2) throw ArgumentError("PCA needs at least 2 rows, got " + std::to_string(m));
    if (dim < 1) throw ArgumentError("PCA needs at least one feature column");
    const Eigen::Index max_dim = std::min(m - 1, dim);
    if (output_dim < 1 || output_dim > max_dim) {
        throw ConfigError("PCA output dimension " + std::to_string(output_dim) +
                          " must be in [1, " + std::to_string(max_dim) + "] for " +
                          std::to_string(m) + " rows of " + std::to_string(dim) + " features");
    }

    PcaModel model;
    model.input_dim = static_cast<int>(dim);
    model.output_dim = output_dim;
    model.mean = data.colwise().mean().transpose();

    const Eigen::MatrixXd centered = data.rowwise() - model.mean.transpose();
    if (centered.cwiseAbs().maxCoeff() == 0.0) {
        throw SolverError("PCA input has zero variance (all rows identical)");
    }

    Eigen::BDCSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();
    const Eigen::MatrixXd& v = svd.matrixV();

    model.components.resize(output_dim, dim);
    model.explained_variance.resize(output_dim);
    for (int k = 0; k < output_dim; ++k) {
        model.components.row(k) = v.col(k).transpose();
        fix_sign(model.components, k);
        model.explained_variance(k) = sv(k) * sv(k) / static_cast<double>(m - 1);
    }
    return model;
}

std::vector<double> transform(const PcaModel& model, std::span<const double> x) {
    if (static_cast<int>(x.size()) != model.input_dim) {
        throw ArgumentError("PCA transform: vector has " + std::to_string(x.size()) +
                            " components, model expects " + std::to_string(model.input_dim));
    }
    const Eigen::Map<const Eigen::VectorXd> xv(x.data(), static_cast<Eigen::Index>(x.size()));
    const Eigen::VectorXd z = model.components * (xv - model.mean);
    return {z.data(), z.data() + z.size()};
}

RowMatrix transform_rows(const PcaModel& model, const RowMatrix& data) {
    if (data.cols() != model.input_dim) {
        throw ArgumentError("PCA transform: rows have " + std::to_string(data.cols()) +
                            " features, model expects " + std::to_string(model.input_dim));
    }
    RowMatrix out = (data.rowwise() - model.mean.transpose()) * model.components.transpose();
    return out;
}

std::vector<double> inverse_transform(const PcaModel& model, std::span<const double> z) {
    if (static_cast<int>(z.size()) != model.output_dim) {
        throw ArgumentError("PCA inverse transform: dimension mismatch");
    }
    const Eigen::Map<const Eigen::VectorXd> zv(z.data(), static_cast<Eigen::Index>(z.size()));
    const Eigen::VectorXd x = model.mean + model.components.transpose() * zv;
    return {x.data(), x.data() + x.size()};
}

}  // namespace qsvm
