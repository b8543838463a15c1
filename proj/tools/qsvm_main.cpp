// qsvm: generate data, fit and evaluate quantum-kernel / RBF SVMs, dump Gram matrices.

#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "qsvm/pipeline.hpp"

namespace {

// Flat TOML: a top-level key that names no shared option is routed to every subcommand
// defining it, so one file can hold shared and per-command settings without tables.
// Keys under [gen-data], [fit], ... tables are passed through unchanged.
class FlatConfig : public CLI::ConfigTOML {
public:
    explicit FlatConfig(const CLI::App& app) : app_(app) {}

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        std::vector<CLI::ConfigItem> routed;
        for (auto& item : CLI::ConfigTOML::from_config(input)) {
            const std::string flag = "--" + item.name;
            if (!item.parents.empty() || app_.get_option_no_throw(flag) != nullptr) {
                routed.push_back(std::move(item));
                continue;
            }
            bool claimed = false;
            for (const auto* sub : app_.get_subcommands({})) {
                if (sub->get_option_no_throw(flag) == nullptr) continue;
                auto copy = item;
                copy.parents = {sub->get_name()};
                routed.push_back(std::move(copy));
                claimed = true;
            }
            if (!claimed) routed.push_back(std::move(item));  // reported as an unknown key
        }
        return routed;
    }

private:
    const CLI::App& app_;
};

void add_run_options(CLI::App& app, qsvm::RunConfig& cfg) {
    app.add_option("--qubits", cfg.qubits, "Feature map qubit count (0 = preprocessed dimension)");
    app.add_option("--reps", cfg.reps, "Feature map repetitions");
    app.add_option("--entanglement", cfg.entanglement, "linear | full");
    app.add_option("--phi", cfg.phi, "Angle function family (standard-zz)");
    app.add_option("--range-lo", cfg.range_lo, "Lower end of the rescaled feature range");
    app.add_option("--range-hi", cfg.range_hi, "Upper end of the rescaled feature range");
    app.add_option("--pca-dim", cfg.pca_dim, "PCA output dimension (0 disables PCA)");
    app.add_option("--demographic-cols", cfg.demographic_columns,
                   "Trailing feature columns appended after PCA instead of reduced");
    app.add_option("--rescale", cfg.rescale, "minmax | none");
    app.add_option("--kernel", cfg.kernel, "quantum | rbf");
    app.add_option("--mode", cfg.mode, "Quantum kernel evaluation: exact | shots");
    app.add_option("--shots", cfg.shots, "Measurement shots per kernel entry in shots mode");
    app.add_option("--gamma", cfg.gamma, "RBF gamma (0 = 1 / (dim * variance))");
    app.add_option("--svm-c", cfg.C, "SVM box constraint C");
    app.add_option("--tol", cfg.tol, "SMO KKT tolerance");
    app.add_option("--max-passes", cfg.max_passes, "SMO iteration cap, in passes over the problem");
    app.add_option("--seed", cfg.seed, "Seed for generators, splits and shot sampling");
    app.add_option("--threads", cfg.threads, "Worker threads (0 = auto)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum-kernel SVM pipeline"};
    app.set_config("--config", "", "Flat TOML config file (keys are long option names); flags take precedence");
    app.config_formatter(std::make_shared<FlatConfig>(app));
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.require_subcommand(1);

    qsvm::RunConfig cfg;
    add_run_options(app, cfg);

    qsvm::GenDataRequest gen;
    auto* gen_cmd = app.add_subcommand("gen-data", "Generate a synthetic dataset CSV");
    gen_cmd->fallthrough();
    gen_cmd->add_option("--generator", gen.generator, "gaussian | quantum");
    gen_cmd->add_option("--per-class", gen.per_class, "Samples per class (gaussian)");
    gen_cmd->add_option("--dim", gen.dim, "Feature dimension (gaussian) or qubit count (quantum)");
    gen_cmd->add_option("--sep", gen.separation, "Class separation (gaussian)");
    gen_cmd->add_option("--count", gen.count, "Sample count (quantum)");
    gen_cmd->add_option("--margin", gen.margin, "Kernel-gap margin (quantum)");
    gen_cmd->add_flag("--demographics", gen.demographics, "Append age and sex columns (gaussian)");
    gen_cmd->add_option("--out", gen.out, "Output CSV path")->required();

    qsvm::FitRequest fit;
    auto* fit_cmd = app.add_subcommand("fit", "Fit preprocessing and a one-vs-one kernel SVM");
    fit_cmd->fallthrough();
    fit_cmd->add_option("--data", fit.data, "Training CSV")->required()->check(CLI::ExistingFile);
    fit_cmd->add_option("--out", fit.out, "Model bundle path")->required();
    fit_cmd->add_option("--test-fraction", fit.test_fraction,
                        "Hold out this stratified fraction of --data before fitting");
    fit_cmd->add_option("--holdout", fit.holdout, "Where to write the held-out rows");

    qsvm::EvalRequest eval;
    auto* eval_cmd = app.add_subcommand("eval", "Evaluate a model bundle on a labelled CSV");
    eval_cmd->fallthrough();
    eval_cmd->add_option("--model", eval.model, "Model bundle")->required()->check(CLI::ExistingFile);
    eval_cmd->add_option("--data", eval.data, "Test CSV")->required()->check(CLI::ExistingFile);
    eval_cmd->add_option("--out-dir", eval.out_dir, "Report directory")->required();

    qsvm::KernelRequest kern;
    auto* kernel_cmd = app.add_subcommand("kernel", "Dump the Gram matrix of a dataset");
    kernel_cmd->fallthrough();
    kernel_cmd->add_option("--data", kern.data, "Dataset CSV")->required()->check(CLI::ExistingFile);
    kernel_cmd->add_option("--out", kern.out, "Gram matrix CSV path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        qsvm::CommandResult result;
        if (*gen_cmd) {
            gen.config = cfg;
            result = qsvm::run_gen_data(gen);
        } else if (*fit_cmd) {
            fit.config = cfg;
            result = qsvm::run_fit(fit);
        } else if (*eval_cmd) {
            eval.threads = cfg.threads;
            result = qsvm::run_eval(eval);
        } else if (*kernel_cmd) {
            kern.config = cfg;
            // The kernel dump works on the features as given unless PCA is asked for.
            if (app.get_option("--pca-dim")->count() == 0) kern.config.pca_dim = 0;
            result = qsvm::run_kernel(kern);
        }
        for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
        std::cout << result.summary;
        if (!result.summary.empty() && result.summary.back() != '\n') std::cout << '\n';
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
