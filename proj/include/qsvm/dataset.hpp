#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qsvm/featuremap.hpp"
#include "qsvm/types.hpp"

namespace qsvm {

/// Where a dataset came from.
struct DataSource {
    enum class Kind { Synthetic, Csv, Derived };
    Kind kind = Kind::Derived;
    std::string generator_id;  // synthetic
    std::uint64_t seed = 0;    // synthetic
    std::string path;          // csv
    std::string checksum;      // csv: file bytes
};

/// Feature rows with integer labels in [0, class_names.size()).
struct Dataset {
    RowMatrix features;
    std::vector<int> labels;
    std::vector<std::string> class_names;
    DataSource source;

    std::size_t size() const { return labels.size(); }
    int dimension() const { return static_cast<int>(features.cols()); }
    int num_classes() const { return static_cast<int>(class_names.size()); }

    /// Throws ArgumentError unless labels are in range, K >= 2 and features are finite.
    void validate() const;

    /// Fingerprint of features (raw doubles) and labels.
    std::string checksum() const;

    /// Rows at `indices`, in the given order.
    Dataset subset(const std::vector<std::size_t>& indices) const;
};

/// Six dementia stages by CDR-SB score:
/// 0 normal (0), 1 questionable (0.5-2.5), 2 very mild (3-4), 3 mild (4.5-9),
/// 4 moderate (9.5-15.5), 5 severe (16-18).
const std::vector<std::string>& cdr_sb_stage_names();

/// Stage label for a CDR-SB score, or nullopt when the score falls outside every band.
std::optional<int> cdr_sb_stage(double score);

/// Six unit-covariance Gaussian clusters, class c centred at separation * v_c where
/// v_0..v_5 are the vertices of a regular simplex with edge length 2 occupying
/// the first five dimensions. Rows are ordered by class. Throws ConfigError for dim < 5.
Dataset generate_gaussian_stages(std::uint64_t seed, int per_class, int dim, double separation);

/// Binary data labelled in the quantum feature space of `spec`: two anchor points
/// a+ and a- are drawn from the seed, samples are uniform in the feature range, and
/// label = 1 iff K(x, a+) > K(x, a-). Samples with |K(x, a+) - K(x, a-)| < margin are
/// redrawn. Throws SolverError if fewer than 1% of draws are accepted.
Dataset generate_quantum_labeled(std::uint64_t seed, int count, const FeatureMapSpec& spec,
                                 double margin);

/// Anchors used by generate_quantum_labeled for the given seed and spec: {a+, a-}.
std::pair<std::vector<double>, std::vector<double>> quantum_label_anchors(std::uint64_t seed,
                                                                          const FeatureMapSpec& spec);

/// Read `f0,...,f{D-1},label` CSV. With class_names, labels must lie in
/// [0, class_names.size()); otherwise K = max(2, max label + 1) with generic names.
/// Throws ParseError (with the line number) on malformed input.
Dataset read_csv(const std::filesystem::path& path,
                 const std::optional<std::vector<std::string>>& class_names = std::nullopt);

/// CSV text in the read_csv format; features printed with 17 significant digits.
std::string format_csv(const Dataset& dataset);

void write_csv(const Dataset& dataset, const std::filesystem::path& path);

struct SplitResult {
    Dataset train;
    Dataset test;
    std::vector<std::size_t> train_indices;
    std::vector<std::size_t> test_indices;
    std::vector<std::string> warnings;
};

/// Stratified split: each class sends round(fraction * n_c) rows to test, keeping at
/// least one row in train. A single-sample class stays in train with a warning.
SplitResult split(const Dataset& dataset, double test_fraction, std::uint64_t seed);

}  // namespace qsvm
