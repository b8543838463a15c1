#pragma once

#include <cstdint>
#include <filesystem>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qsvm/dataset.hpp"
#include "qsvm/dimred.hpp"
#include "qsvm/eval.hpp"
#include "qsvm/featuremap.hpp"
#include "qsvm/kernel.hpp"
#include "qsvm/svm.hpp"

namespace qsvm {

/// Every tunable of a pipeline run. Defaults are usable without a config file.
struct RunConfig {
    // Feature map. qubits == 0 derives the count from the preprocessed dimension.
    int qubits = 0;
    int reps = 2;
    std::string entanglement = "linear";
    std::string phi = "standard-zz";
    double range_lo = 0.0;
    double range_hi = std::numbers::pi;

    // Preprocessing. pca_dim == 0 disables PCA; trailing demographic columns skip
    // PCA and are appended to its output.
    int pca_dim = 8;
    int demographic_columns = 0;
    std::string rescale = "minmax";  // minmax | none

    // Kernel.
    std::string kernel = "quantum";  // quantum | rbf
    std::string mode = "exact";      // exact | shots
    std::uint64_t shots = 1024;
    double gamma = 0.0;  // 0 selects 1 / (dim * variance)

    // SVM.
    double C = 1.0;
    double tol = 1e-3;
    int max_passes = 10000;

    std::uint64_t seed = 0;
    std::size_t threads = 0;

    nlohmann::json to_json() const;
    static RunConfig from_json(const nlohmann::json& j);
};

/// Fitted feature preprocessing: PCA on the leading columns, demographic columns
/// passed through, then affine rescaling into the feature range.
struct Preprocessor {
    int input_dim = 0;
    int demographic_columns = 0;
    std::optional<PcaModel> pca;
    std::optional<FeatureBounds> bounds;
    FeatureRange range;

    int output_dim() const;
    RowMatrix apply(const RowMatrix& raw) const;
};

Preprocessor fit_preprocessor(const RowMatrix& raw, const RunConfig& config);

/// Kernel described by the config for data of the given (preprocessed) dimension.
/// Throws ConfigError when an explicit qubit count disagrees with the dimension.
KernelDescriptor make_kernel(const RunConfig& config, const RowMatrix& features);

/// Everything needed to classify new raw feature rows.
struct ModelBundle {
    static constexpr int kFormatVersion = 1;

    RunConfig config;
    std::string created_at;
    std::vector<std::string> class_names;
    Preprocessor preprocessor;
    KernelDescriptor kernel;
    MultiClassSvm svm;
    RowMatrix training_features;  // preprocessed
    std::vector<int> training_labels;
};

ModelBundle fit_model(const Dataset& train, const RunConfig& config);

nlohmann::json bundle_to_json(const ModelBundle& bundle);
/// Throws ConfigError for an unknown format or a newer format_version.
ModelBundle bundle_from_json(const nlohmann::json& j);

struct Evaluation {
    Prediction prediction;
    ConfusionMatrix confusion;
    Metrics metrics;
};

/// Preprocess `test` with the stored transforms, build the cross kernel, predict, score.
Evaluation evaluate_model(const ModelBundle& bundle, const Dataset& test, std::size_t threads = 0);

/// Dataset CSV plus optional `<csv>.json` sidecar holding class names.
Dataset load_dataset(const std::filesystem::path& csv);

/// Files written by a command. Each is staged as `<path>.tmp` and only renamed into
/// place by commit(); anything still staged is deleted on destruction.
class OutputSet {
public:
    OutputSet() = default;
    OutputSet(const OutputSet&) = delete;
    OutputSet& operator=(const OutputSet&) = delete;
    ~OutputSet();

    void write(const std::filesystem::path& path, const std::string& contents);
    void commit();

private:
    std::vector<std::filesystem::path> staged_;
    bool committed_ = false;
};

struct GenDataRequest {
    std::string generator = "gaussian";  // gaussian | quantum
    int per_class = 30;
    int dim = 16;
    double separation = 3.0;
    int count = 300;
    double margin = 0.1;
    bool demographics = false;
    RunConfig config;  // seed, and feature map settings for the quantum generator
    std::filesystem::path out;
};

struct FitRequest {
    std::filesystem::path data;
    std::filesystem::path out;
    double test_fraction = 0.0;  // > 0 splits the input and writes the held-out part
    std::filesystem::path holdout;
    RunConfig config;
};

struct EvalRequest {
    std::filesystem::path model;
    std::filesystem::path data;
    std::filesystem::path out_dir;
    std::size_t threads = 0;
};

struct KernelRequest {
    std::filesystem::path data;
    std::filesystem::path out;
    RunConfig config;
};

/// Command results carry the human-readable summary printed by the CLI.
struct CommandResult {
    std::string summary;
    std::vector<std::string> warnings;
};

CommandResult run_gen_data(const GenDataRequest& request);
CommandResult run_fit(const FitRequest& request);
CommandResult run_eval(const EvalRequest& request);
CommandResult run_kernel(const KernelRequest& request);

}  // namespace qsvm
