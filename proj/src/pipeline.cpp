#include "qsvm/pipeline.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <utility>

#include "qsvm/checksum.hpp"
#include "qsvm/errors.hpp"
#include "qsvm/random.hpp"

namespace qsvm {

using nlohmann::json;

namespace {

constexpr const char* kBundleFormat = "qsvm-model-bundle";

/// Run one pipeline stage, prefixing any failure with the stage name.
template <class F>
auto stage(const char* name, F&& body) -> decltype(body()) {
    try {
        return body();
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string(name) + ": " + e.what());
    }
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json matrix_json(const Eigen::Ref<const Eigen::MatrixXd>& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXd matrix_from_json(const json& rows, Eigen::Index cols) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), cols);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        const auto& row = rows.at(i);
        if (static_cast<Eigen::Index>(row.size()) != cols) throw ConfigError("bundle: ragged matrix");
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = row.at(j).get<double>();
    }
    return m;
}

json vector_json(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

Eigen::VectorXd vector_from_json(const json& j) {
    const auto v = j.get<std::vector<double>>();
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::filesystem::path sidecar_path(const std::filesystem::path& path) {
    return std::filesystem::path(path.string() + ".json");
}

std::string gram_csv_text(const Eigen::MatrixXd& values) {
    std::string out;
    char buf[32];
    for (Eigen::Index i = 0; i < values.rows(); ++i) {
        for (Eigen::Index j = 0; j < values.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", values(i, j));
            if (j > 0) out += ',';
            out += buf;
        }
        out += '\n';
    }
    return out;
}

/// Synthetic age and sex columns; age drifts upward with stage.
RowMatrix demographic_columns(const Dataset& data, std::uint64_t seed) {
    Rng rng(substream_seed(seed, 0x64656d6fULL, 0));
    RowMatrix extra(static_cast<Eigen::Index>(data.size()), 2);
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto r = static_cast<Eigen::Index>(i);
        extra(r, 0) = 62.0 + 3.0 * data.labels[i] + 6.0 * rng.normal();
        extra(r, 1) = rng.uniform() < 0.5 ? 0.0 : 1.0;
    }
    return extra;
}

}  // namespace

json RunConfig::to_json() const {
    return {
        {"qubits", qubits},
        {"reps", reps},
        {"entanglement", entanglement},
        {"phi", phi},
        {"feature_range", {range_lo, range_hi}},
        {"pca_dim", pca_dim},
        {"demographic_columns", demographic_columns},
        {"rescale", rescale},
        {"kernel", kernel},
        {"mode", mode},
        {"shots", shots},
        {"gamma", gamma},
        {"C", C},
        {"tol", tol},
        {"max_passes", max_passes},
        {"seed", seed},
    };
}

RunConfig RunConfig::from_json(const json& j) {
    RunConfig c;
    c.qubits = j.at("qubits").get<int>();
    c.reps = j.at("reps").get<int>();
    c.entanglement = j.at("entanglement").get<std::string>();
    c.phi = j.at("phi").get<std::string>();
    c.range_lo = j.at("feature_range").at(0).get<double>();
    c.range_hi = j.at("feature_range").at(1).get<double>();
    c.pca_dim = j.at("pca_dim").get<int>();
    c.demographic_columns = j.at("demographic_columns").get<int>();
    c.rescale = j.at("rescale").get<std::string>();
    c.kernel = j.at("kernel").get<std::string>();
    c.mode = j.at("mode").get<std::string>();
    c.shots = j.at("shots").get<std::uint64_t>();
    c.gamma = j.at("gamma").get<double>();
    c.C = j.at("C").get<double>();
    c.tol = j.at("tol").get<double>();
    c.max_passes = j.at("max_passes").get<int>();
    c.seed = j.at("seed").get<std::uint64_t>();
    return c;
}

int Preprocessor::output_dim() const {
    const int base = pca ? pca->output_dim : input_dim - demographic_columns;
    return base + demographic_columns;
}

RowMatrix Preprocessor::apply(const RowMatrix& raw) const {
    if (raw.cols() != input_dim) {
        throw ArgumentError("feature dimension mismatch: model expects " + std::to_string(input_dim) +
                            " columns, data has " + std::to_string(raw.cols()));
    }
    const Eigen::Index base = input_dim - demographic_columns;
    RowMatrix reduced;
    if (pca) {
        reduced = transform_rows(*pca, raw.leftCols(base));
    } else {
        reduced = raw.leftCols(base);
    }
    RowMatrix joined(raw.rows(), reduced.cols() + demographic_columns);
    joined.leftCols(reduced.cols()) = reduced;
    joined.rightCols(demographic_columns) = raw.rightCols(demographic_columns);
    return bounds ? rescale_rows(joined, *bounds, range) : joined;
}

Preprocessor fit_preprocessor(const RowMatrix& raw, const RunConfig& config) {
    Preprocessor pre;
    pre.input_dim = static_cast<int>(raw.cols());
    pre.demographic_columns = config.demographic_columns;
    pre.range = {config.range_lo, config.range_hi};
    if (config.demographic_columns < 0 || config.demographic_columns >= pre.input_dim) {
        throw ConfigError("demographic columns must be in [0, " + std::to_string(pre.input_dim) + ")");
    }
    if (config.pca_dim < 0) throw ConfigError("pca dimension must be >= 0");
    if (config.pca_dim > 0) {
        const Eigen::Index base = pre.input_dim - pre.demographic_columns;
        pre.pca = fit_pca(raw.leftCols(base), config.pca_dim);
    }
    if (config.rescale == "minmax") {
        // bounds is still empty here, so apply() returns the unscaled features.
        pre.bounds = FeatureBounds::from_rows(pre.apply(raw));
    } else if (config.rescale != "none") {
        throw ConfigError("unknown rescale mode '" + config.rescale + "' (expected minmax or none)");
    }
    return pre;
}

KernelDescriptor make_kernel(const RunConfig& config, const RowMatrix& features) {
    if (config.kernel == "rbf") {
        if (config.gamma < 0.0) throw ConfigError("rbf gamma must be positive (0 selects the default)");
        const double gamma = config.gamma > 0.0 ? config.gamma : default_rbf_gamma(features);
        return RbfKernel{gamma};
    }
    if (config.kernel != "quantum") {
        throw ConfigError("unknown kernel '" + config.kernel + "' (expected quantum or rbf)");
    }
    const int dim = static_cast<int>(features.cols());
    if (config.qubits != 0 && config.qubits != dim) {
        throw ConfigError("qubit count " + std::to_string(config.qubits) +
                          " does not match the preprocessed feature dimension " + std::to_string(dim) +
                          " (pca dimension plus demographic columns)");
    }
    FeatureMapSpec spec(dim, config.reps, parse_entanglement(config.entanglement),
                        phi_family(config.phi), {config.range_lo, config.range_hi});
    KernelMode mode;
    if (config.mode == "shots") {
        if (config.shots < 1) throw ConfigError("shot count must be >= 1");
        mode = KernelMode::shots_mode(config.shots, config.seed);
    } else if (config.mode != "exact") {
        throw ConfigError("unknown kernel mode '" + config.mode + "' (expected exact or shots)");
    }
    return QuantumKernel{std::move(spec), mode};
}

ModelBundle fit_model(const Dataset& train, const RunConfig& config) {
    train.validate();
    ModelBundle bundle{config, utc_timestamp(), train.class_names, {}, RbfKernel{1.0}, {}, {}, train.labels};
    bundle.preprocessor = stage("pca", [&] { return fit_preprocessor(train.features, config); });
    bundle.training_features = stage("rescale", [&] { return bundle.preprocessor.apply(train.features); });
    bundle.kernel = stage("kernel", [&] { return make_kernel(config, bundle.training_features); });
    const GramMatrix g = stage("gram", [&] { return gram(bundle.kernel, bundle.training_features, config.threads); });
    const SvmOptions options{config.C, config.tol, config.max_passes};
    bundle.svm = stage("svm", [&] { return fit_multiclass(g, train.labels, options, config.threads); });
    return bundle;
}

json bundle_to_json(const ModelBundle& b) {
    json j;
    j["format"] = kBundleFormat;
    j["format_version"] = ModelBundle::kFormatVersion;
    j["created_at"] = b.created_at;
    j["config"] = b.config.to_json();
    j["class_names"] = b.class_names;

    const auto& pre = b.preprocessor;
    json pj;
    pj["input_dim"] = pre.input_dim;
    pj["demographic_columns"] = pre.demographic_columns;
    pj["feature_range"] = {pre.range.lo, pre.range.hi};
    if (pre.pca) {
        pj["pca"] = {
            {"input_dim", pre.pca->input_dim},
            {"output_dim", pre.pca->output_dim},
            {"mean", vector_json(pre.pca->mean)},
            {"components", matrix_json(pre.pca->components)},
            {"explained_variance", vector_json(pre.pca->explained_variance)},
        };
    } else {
        pj["pca"] = nullptr;
    }
    pj["rescale_bounds"] = pre.bounds ? json{{"min", pre.bounds->min}, {"max", pre.bounds->max}} : json(nullptr);
    j["preprocess"] = std::move(pj);

    json kj;
    kj["kernel_id"] = kernel_id(b.kernel);
    if (const auto* q = std::get_if<QuantumKernel>(&b.kernel)) {
        kj["type"] = "quantum";
        kj["feature_map"] = {
            {"qubits", q->spec.num_qubits()},
            {"reps", q->spec.repetitions()},
            {"entanglement", std::string(to_string(q->spec.entanglement()))},
            {"phi", q->spec.phi().name},
            {"feature_range", {q->spec.feature_range().lo, q->spec.feature_range().hi}},
        };
        kj["mode"] = q->mode.name();
        kj["shots"] = q->mode.sampled ? json(q->mode.shots) : json(nullptr);
        kj["seed"] = q->mode.sampled ? json(q->mode.seed) : json(nullptr);
    } else {
        kj["type"] = "rbf";
        kj["gamma"] = std::get<RbfKernel>(b.kernel).gamma;
    }
    j["kernel"] = std::move(kj);

    json sj;
    sj["C"] = b.svm.options.C;
    sj["tol"] = b.svm.options.tol;
    sj["max_passes"] = b.svm.options.max_passes;
    sj["jitter"] = b.svm.jitter;
    sj["classes"] = b.svm.classes;
    sj["training_size"] = b.svm.training_size;
    json pairs = json::array();
    for (const auto& p : b.svm.pairwise) {
        pairs.push_back({
            {"class_a", p.class_a},
            {"class_b", p.class_b},
            {"bias", p.model.bias},
            {"objective", p.model.objective},
            {"iterations", p.model.iterations},
            {"support_indices", p.model.support_indices},
            {"dual_coefs", p.model.dual_coefs},
        });
    }
    sj["pairwise"] = std::move(pairs);
    j["svm"] = std::move(sj);

    j["training_features"] = matrix_json(b.training_features);
    j["training_labels"] = b.training_labels;
    return j;
}

ModelBundle bundle_from_json(const json& j) {
    if (!j.is_object() || j.value("format", "") != kBundleFormat) {
        throw ConfigError("not a model bundle (missing format tag)");
    }
    const int version = j.at("format_version").get<int>();
    if (version > ModelBundle::kFormatVersion) {
        throw ConfigError("model bundle format_version " + std::to_string(version) +
                          " is newer than supported version " +
                          std::to_string(ModelBundle::kFormatVersion));
    }
    ModelBundle b{RunConfig::from_json(j.at("config")), j.at("created_at").get<std::string>(),
                  j.at("class_names").get<std::vector<std::string>>(), {}, RbfKernel{1.0}, {}, {}, {}};

    const auto& pj = j.at("preprocess");
    auto& pre = b.preprocessor;
    pre.input_dim = pj.at("input_dim").get<int>();
    pre.demographic_columns = pj.at("demographic_columns").get<int>();
    pre.range = {pj.at("feature_range").at(0).get<double>(), pj.at("feature_range").at(1).get<double>()};
    if (!pj.at("pca").is_null()) {
        const auto& pc = pj.at("pca");
        PcaModel pca;
        pca.input_dim = pc.at("input_dim").get<int>();
        pca.output_dim = pc.at("output_dim").get<int>();
        pca.mean = vector_from_json(pc.at("mean"));
        pca.components = matrix_from_json(pc.at("components"), pca.input_dim);
        pca.explained_variance = vector_from_json(pc.at("explained_variance"));
        pre.pca = std::move(pca);
    }
    if (!pj.at("rescale_bounds").is_null()) {
        pre.bounds = FeatureBounds{pj.at("rescale_bounds").at("min").get<std::vector<double>>(),
                                   pj.at("rescale_bounds").at("max").get<std::vector<double>>()};
    }

    const auto& kj = j.at("kernel");
    if (kj.at("type") == "quantum") {
        const auto& fm = kj.at("feature_map");
        FeatureMapSpec spec(fm.at("qubits").get<int>(), fm.at("reps").get<int>(),
                            parse_entanglement(fm.at("entanglement").get<std::string>()),
                            phi_family(fm.at("phi").get<std::string>()),
                            {fm.at("feature_range").at(0).get<double>(), fm.at("feature_range").at(1).get<double>()});
        KernelMode mode;
        if (kj.at("mode") == "shots") {
            mode = KernelMode::shots_mode(kj.at("shots").get<std::uint64_t>(), kj.at("seed").get<std::uint64_t>());
        }
        b.kernel = QuantumKernel{std::move(spec), mode};
    } else if (kj.at("type") == "rbf") {
        b.kernel = RbfKernel{kj.at("gamma").get<double>()};
    } else {
        throw ConfigError("bundle: unknown kernel type");
    }
    if (kernel_id(b.kernel) != kj.at("kernel_id").get<std::string>()) {
        throw ConfigError("bundle: stored kernel_id does not match the kernel description");
    }

    const auto& sj = j.at("svm");
    b.svm.options = {sj.at("C").get<double>(), sj.at("tol").get<double>(), sj.at("max_passes").get<int>()};
    b.svm.jitter = sj.at("jitter").get<double>();
    b.svm.classes = sj.at("classes").get<std::vector<int>>();
    b.svm.training_size = sj.at("training_size").get<std::size_t>();
    b.svm.kernel_id = kernel_id(b.kernel);
    for (const auto& p : sj.at("pairwise")) {
        PairwiseSvm pair;
        pair.class_a = p.at("class_a").get<int>();
        pair.class_b = p.at("class_b").get<int>();
        pair.model.bias = p.at("bias").get<double>();
        pair.model.objective = p.at("objective").get<double>();
        pair.model.iterations = p.at("iterations").get<long>();
        pair.model.support_indices = p.at("support_indices").get<std::vector<std::size_t>>();
        pair.model.dual_coefs = p.at("dual_coefs").get<std::vector<double>>();
        pair.model.C = b.svm.options.C;
        pair.model.training_size = b.svm.training_size;
        if (pair.model.support_indices.size() != pair.model.dual_coefs.size()) {
            throw ConfigError("bundle: support index and coefficient counts differ");
        }
        b.svm.pairwise.push_back(std::move(pair));
    }

    const int feature_dim = pre.output_dim();
    const Eigen::MatrixXd train = matrix_from_json(j.at("training_features"), feature_dim);
    b.training_features = train;
    b.training_labels = j.at("training_labels").get<std::vector<int>>();
    if (static_cast<std::size_t>(b.training_features.rows()) != b.svm.training_size) {
        throw ConfigError("bundle: training feature count does not match the SVM");
    }
    return b;
}

Evaluation evaluate_model(const ModelBundle& bundle, const Dataset& test, std::size_t threads) {
    const RowMatrix features = stage("preprocess", [&] { return bundle.preprocessor.apply(test.features); });
    const KernelBlock block = stage("kernel", [&] {
        return gram_cross(bundle.kernel, bundle.training_features, features, threads);
    });
    Evaluation out;
    out.prediction = stage("predict", [&] { return predict(bundle.svm, block); });
    out.confusion = stage("evaluate", [&] {
        return confusion(test.labels, out.prediction.labels, static_cast<int>(bundle.class_names.size()),
                         bundle.class_names);
    });
    out.metrics = metrics(out.confusion);
    return out;
}

Dataset load_dataset(const std::filesystem::path& csv) {
    std::optional<std::vector<std::string>> names;
    const auto side = sidecar_path(csv);
    if (std::filesystem::exists(side)) {
        const json meta = json::parse(read_text(side));
        if (meta.contains("class_names")) names = meta.at("class_names").get<std::vector<std::string>>();
    }
    return read_csv(csv, names);
}

OutputSet::~OutputSet() {
    if (committed_) return;
    std::error_code ec;
    for (const auto& path : staged_) std::filesystem::remove(std::filesystem::path(path.string() + ".tmp"), ec);
}

void OutputSet::write(const std::filesystem::path& path, const std::string& contents) {
    if (committed_) throw std::logic_error("OutputSet already committed");
    const std::filesystem::path tmp(path.string() + ".tmp");
    staged_.push_back(path);
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << contents;
    out.close();
    if (!out) throw std::runtime_error("failed writing " + tmp.string());
}

void OutputSet::commit() {
    for (const auto& path : staged_) {
        std::filesystem::rename(std::filesystem::path(path.string() + ".tmp"), path);
    }
    committed_ = true;
}

CommandResult run_gen_data(const GenDataRequest& request) {
    if (request.out.empty()) throw ConfigError("gen-data: --out is required");
    const RunConfig& config = request.config;
    Dataset data;
    json params;
    if (request.generator == "gaussian") {
        data = generate_gaussian_stages(config.seed, request.per_class, request.dim, request.separation);
        params = {{"per_class", request.per_class}, {"dim", request.dim}, {"separation", request.separation}};
        if (request.demographics) {
            const RowMatrix extra = demographic_columns(data, config.seed);
            RowMatrix joined(data.features.rows(), data.features.cols() + extra.cols());
            joined << data.features, extra;
            data.features = std::move(joined);
            params["demographic_columns"] = {"age", "sex"};
        }
    } else if (request.generator == "quantum") {
        const int qubits = config.qubits != 0 ? config.qubits : request.dim;
        FeatureMapSpec spec(qubits, config.reps, parse_entanglement(config.entanglement),
                            phi_family(config.phi), {config.range_lo, config.range_hi});
        data = generate_quantum_labeled(config.seed, request.count, spec, request.margin);
        params = {{"count", request.count}, {"margin", request.margin}, {"kernel_id", spec.id()}};
    } else {
        throw ConfigError("unknown generator '" + request.generator + "' (expected gaussian or quantum)");
    }

    json meta = {
        {"generator_id", data.source.generator_id},
        {"seed", config.seed},
        {"params", params},
        {"class_names", data.class_names},
        {"rows", data.size()},
        {"dim", data.dimension()},
        {"dataset_checksum", data.checksum()},
    };
    OutputSet outputs;
    outputs.write(request.out, format_csv(data));
    outputs.write(sidecar_path(request.out), meta.dump(2) + "\n");
    outputs.commit();

    CommandResult result;
    result.summary = "wrote " + std::to_string(data.size()) + " rows x " + std::to_string(data.dimension()) +
                     " features (" + std::to_string(data.num_classes()) + " classes) to " +
                     request.out.string();
    return result;
}

CommandResult run_fit(const FitRequest& request) {
    if (request.out.empty()) throw ConfigError("fit: --out is required");
    CommandResult result;
    Dataset data = stage("load", [&] { return load_dataset(request.data); });

    OutputSet outputs;
    if (request.test_fraction > 0.0) {
        if (request.holdout.empty()) throw ConfigError("fit: --holdout is required with --test-fraction");
        SplitResult parts = stage("split", [&] { return split(data, request.test_fraction, request.config.seed); });
        result.warnings = parts.warnings;
        outputs.write(request.holdout, format_csv(parts.test));
        outputs.write(sidecar_path(request.holdout),
                      json{{"class_names", parts.test.class_names},
                           {"split", {{"test_fraction", request.test_fraction}, {"seed", request.config.seed}}},
                           {"dataset_checksum", parts.test.checksum()}}
                              .dump(2) + "\n");
        data = std::move(parts.train);
    }

    const ModelBundle bundle = fit_model(data, request.config);
    json j = bundle_to_json(bundle);
    j["training_data_checksum"] = data.checksum();
    outputs.write(request.out, j.dump(1) + "\n");
    outputs.commit();

    std::ostringstream summary;
    summary << "fit " << kernel_id(bundle.kernel) << " on " << data.size() << " rows, "
            << bundle.svm.classes.size() << " classes, " << bundle.svm.pairwise.size()
            << " pairwise models -> " << request.out.string();
    result.summary = summary.str();
    return result;
}

CommandResult run_eval(const EvalRequest& request) {
    if (request.out_dir.empty()) throw ConfigError("eval: --out-dir is required");
    const ModelBundle bundle = stage("load model", [&] { return bundle_from_json(json::parse(read_text(request.model))); });
    const Dataset test = stage("load data", [&] { return load_dataset(request.data); });
    const Evaluation ev = evaluate_model(bundle, test, request.threads);

    json report = metrics_report(ev.confusion, ev.metrics);
    report["kernel_id"] = bundle.svm.kernel_id;

    std::string predictions = "row,true,predicted\n";
    for (std::size_t i = 0; i < test.size(); ++i) {
        predictions += std::to_string(i) + "," + std::to_string(test.labels[i]) + "," +
                       std::to_string(ev.prediction.labels[i]) + "\n";
    }

    std::filesystem::create_directories(request.out_dir);
    OutputSet outputs;
    outputs.write(request.out_dir / "confusion_counts.csv", confusion_counts_csv(ev.confusion));
    outputs.write(request.out_dir / "confusion_percent.csv", confusion_percent_csv(ev.confusion));
    outputs.write(request.out_dir / "metrics.json", report.dump(2) + "\n");
    outputs.write(request.out_dir / "predictions.csv", predictions);
    outputs.commit();

    char line[128];
    std::snprintf(line, sizeof line, "held-out accuracy: %.4f  macro-F1: %s  (%zu samples)\n",
                  ev.metrics.accuracy,
                  ev.metrics.macro_f1 ? std::to_string(*ev.metrics.macro_f1).c_str() : "undefined",
                  test.size());
    CommandResult result;
    result.summary = line + format_confusion(ev.confusion);
    return result;
}

CommandResult run_kernel(const KernelRequest& request) {
    if (request.out.empty()) throw ConfigError("kernel: --out is required");
    const Dataset data = stage("load", [&] { return load_dataset(request.data); });
    const Preprocessor pre = stage("preprocess", [&] { return fit_preprocessor(data.features, request.config); });
    const RowMatrix features = pre.apply(data.features);
    const KernelDescriptor kernel = stage("kernel", [&] { return make_kernel(request.config, features); });
    const GramMatrix g = stage("gram", [&] { return gram(kernel, features, request.config.threads); });

    json meta = {
        {"mode", g.mode.name()},
        {"shots", g.mode.sampled ? json(g.mode.shots) : json(nullptr)},
        {"seed", g.mode.sampled ? json(g.mode.seed) : json(nullptr)},
        {"kernel_id", g.kernel_id},
        {"size", g.size()},
        {"checksum", g.checksum()},
    };
    OutputSet outputs;
    outputs.write(request.out, gram_csv_text(g.values));
    outputs.write(sidecar_path(request.out), meta.dump(2) + "\n");
    outputs.commit();

    CommandResult result;
    result.summary = "wrote " + std::to_string(g.size()) + "x" + std::to_string(g.size()) + " " +
                     g.mode.name() + " Gram matrix (" + g.kernel_id + ") to " + request.out.string();
    return result;
}

}  // namespace qsvm
