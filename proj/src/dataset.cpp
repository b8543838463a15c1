#include "qsvm/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>

#include "qsvm/checksum.hpp"
#include "qsvm/errors.hpp"
#include "qsvm/kernel.hpp"
#include "qsvm/random.hpp"

namespace qsvm {

void Dataset::validate() const {
    if (static_cast<std::size_t>(features.rows()) != labels.size()) {
        throw ArgumentError("dataset has " + std::to_string(features.rows()) + " rows but " +
                            std::to_string(labels.size()) + " labels");
    }
    if (class_names.size() < 2) throw ArgumentError("dataset needs at least two classes");
    for (int y : labels) {
        if (y < 0 || y >= num_classes()) {
            throw ArgumentError("label " + std::to_string(y) + " outside [0, " +
                                std::to_string(num_classes()) + ")");
        }
    }
    if (!features.allFinite()) throw ArgumentError("dataset contains non-finite feature values");
}

std::string Dataset::checksum() const {
    Fnv1a h;
    h.update(static_cast<std::int64_t>(features.rows()));
    h.update(static_cast<std::int64_t>(features.cols()));
    for (Eigen::Index i = 0; i < features.size(); ++i) h.update(features.data()[i]);
    for (int y : labels) h.update(static_cast<std::int64_t>(y));
    return h.hex();
}

Dataset Dataset::subset(const std::vector<std::size_t>& indices) const {
    Dataset out;
    out.features.resize(static_cast<Eigen::Index>(indices.size()), features.cols());
    out.labels.reserve(indices.size());
    for (std::size_t r = 0; r < indices.size(); ++r) {
        out.features.row(static_cast<Eigen::Index>(r)) = features.row(static_cast<Eigen::Index>(indices[r]));
        out.labels.push_back(labels.at(indices[r]));
    }
    out.class_names = class_names;
    out.source = source;
    out.source.kind = DataSource::Kind::Derived;
    return out;
}

const std::vector<std::string>& cdr_sb_stage_names() {
    static const std::vector<std::string> names = {
        "normal", "questionable", "very mild", "mild", "moderate", "severe",
    };
    return names;
}

std::optional<int> cdr_sb_stage(double score) {
    // CDR-SB is scored in half-point steps, so the bands leave no gaps on that grid.
    if (score == 0.0) return 0;
    if (score >= 0.5 && score <= 2.5) return 1;
    if (score >= 3.0 && score <= 4.0) return 2;
    if (score >= 4.5 && score <= 9.0) return 3;
    if (score >= 9.5 && score <= 15.5) return 4;
    if (score >= 16.0 && score <= 18.0) return 5;
    return std::nullopt;
}

Dataset generate_gaussian_stages(std::uint64_t seed, int per_class, int dim, double separation) {
    constexpr int kClasses = 6;
    if (per_class < 1) throw ConfigError("per_class must be >= 1");
    if (dim < kClasses - 1) {
        throw ConfigError("gaussian stage generator needs dim >= 5 to place six simplex vertices, got " +
                          std::to_string(dim));
    }
    if (!(separation >= 0.0) || !std::isfinite(separation)) {
        throw ConfigError("class separation must be finite and >= 0");
    }

    // Helmert coordinates: vertex c is e_c - centroid expressed in an orthonormal basis
    // of the sum-zero hyperplane. Unscaled edges have length sqrt(2); rescale to edge 2
    // so neighbouring class means sit 2 * separation apart.
    Eigen::MatrixXd vertices = Eigen::MatrixXd::Zero(kClasses, kClasses - 1);
    for (int k = 1; k < kClasses; ++k) {
        const double norm = std::sqrt(static_cast<double>(k) * (k + 1));
        for (int c = 0; c < k; ++c) vertices(c, k - 1) = 1.0 / norm;
        vertices(k, k - 1) = -static_cast<double>(k) / norm;
    }
    vertices *= std::numbers::sqrt2;

    Dataset out;
    out.features.resize(static_cast<Eigen::Index>(kClasses) * per_class, dim);
    out.labels.reserve(static_cast<std::size_t>(kClasses) * per_class);
    out.class_names = cdr_sb_stage_names();
    out.source = {DataSource::Kind::Synthetic, "gaussian-stages", seed, {}, {}};

    Rng rng(seed);
    Eigen::Index row = 0;
    for (int c = 0; c < kClasses; ++c) {
        for (int s = 0; s < per_class; ++s, ++row) {
            for (int d = 0; d < dim; ++d) {
                const double centre = d < kClasses - 1 ? separation * vertices(c, d) : 0.0;
                out.features(row, d) = centre + rng.normal();
            }
            out.labels.push_back(c);
        }
    }
    return out;
}

namespace {

std::vector<double> uniform_point(Rng& rng, const FeatureMapSpec& spec) {
    std::vector<double> x(spec.num_qubits());
    for (auto& v : x) v = rng.uniform(spec.feature_range().lo, spec.feature_range().hi);
    return x;
}

}  // namespace

std::pair<std::vector<double>, std::vector<double>> quantum_label_anchors(std::uint64_t seed,
                                                                          const FeatureMapSpec& spec) {
    Rng rng(substream_seed(seed, 0x616e63686f72ULL, 0));
    auto plus = uniform_point(rng, spec);
    auto minus = uniform_point(rng, spec);
    return {std::move(plus), std::move(minus)};
}

Dataset generate_quantum_labeled(std::uint64_t seed, int count, const FeatureMapSpec& spec,
                                 double margin) {
    if (count < 4) throw ConfigError("quantum-labeled generator needs count >= 4");
    if (!(margin > 0.0)) throw ConfigError("quantum-labeled generator needs margin > 0");

    const auto [anchor_plus, anchor_minus] = quantum_label_anchors(seed, spec);
    const QuantumState psi_plus = encode(spec, anchor_plus);
    const QuantumState psi_minus = encode(spec, anchor_minus);

    Dataset out;
    out.features.resize(count, spec.num_qubits());
    out.labels.reserve(count);
    out.class_names = {"anchor-minus", "anchor-plus"};
    out.source = {DataSource::Kind::Synthetic, "quantum-labeled", seed, {}, {}};

    Rng rng(seed);
    const long budget = 100L * count;
    long draws = 0;
    int accepted = 0;
    while (accepted < count) {
        if (draws >= budget) {
            throw SolverError("quantum-labeled generator accepted " + std::to_string(accepted) +
                              " of " + std::to_string(draws) +
                              " draws (rejection rate above 99%); try a smaller margin");
        }
        ++draws;
        const auto x = uniform_point(rng, spec);
        const QuantumState psi = encode(spec, x);
        const double gap = fidelity(psi, psi_plus) - fidelity(psi, psi_minus);
        if (std::abs(gap) < margin) continue;
        std::copy(x.begin(), x.end(), out.features.data() + accepted * out.features.cols());
        out.labels.push_back(gap > 0.0 ? 1 : 0);
        ++accepted;
    }
    return out;
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

[[noreturn]] void parse_fail(const std::filesystem::path& path, std::size_t line, const std::string& what) {
    throw ParseError(path.string() + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

Dataset read_csv(const std::filesystem::path& path,
                 const std::optional<std::vector<std::string>>& class_names) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path.string());

    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) parse_fail(path, 1, "missing header row");
    ++line_no;
    const auto header = split_fields(trim(line));
    if (header.size() < 2 || trim(header.back()) != "label") {
        parse_fail(path, line_no, "missing label column (last header field must be 'label')");
    }
    const std::size_t dim = header.size() - 1;

    std::vector<double> values;
    std::vector<int> labels;
    while (std::getline(in, line)) {
        ++line_no;
        const auto body = trim(line);
        if (body.empty()) continue;
        const auto fields = split_fields(body);
        if (fields.size() != header.size()) {
            parse_fail(path, line_no, "expected " + std::to_string(header.size()) + " columns, found " +
                                          std::to_string(fields.size()));
        }
        for (std::size_t d = 0; d < dim; ++d) {
            const auto cell = trim(fields[d]);
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (ec != std::errc() || ptr != cell.data() + cell.size() || cell.empty()) {
                parse_fail(path, line_no, "non-numeric value '" + std::string(cell) + "' in column " +
                                              std::string(header[d]));
            }
            if (!std::isfinite(v)) parse_fail(path, line_no, "non-finite value in column " + std::string(header[d]));
            values.push_back(v);
        }
        const auto cell = trim(fields.back());
        int y = 0;
        const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), y);
        if (ec != std::errc() || ptr != cell.data() + cell.size() || cell.empty()) {
            parse_fail(path, line_no, "label '" + std::string(cell) + "' is not an integer");
        }
        if (y < 0) parse_fail(path, line_no, "negative label " + std::to_string(y));
        if (class_names && y >= static_cast<int>(class_names->size())) {
            parse_fail(path, line_no, "label " + std::to_string(y) + " outside [0, " +
                                          std::to_string(class_names->size()) + ")");
        }
        labels.push_back(y);
    }
    if (labels.empty()) throw ParseError(path.string() + ": empty dataset");

    Dataset out;
    out.features = Eigen::Map<RowMatrix>(values.data(), static_cast<Eigen::Index>(labels.size()),
                                         static_cast<Eigen::Index>(dim));
    out.labels = std::move(labels);
    if (class_names) {
        out.class_names = *class_names;
    } else {
        const int k = std::max(2, *std::max_element(out.labels.begin(), out.labels.end()) + 1);
        for (int c = 0; c < k; ++c) out.class_names.push_back("class_" + std::to_string(c));
    }
    out.source = {DataSource::Kind::Csv, {}, 0, path.string(), file_checksum(path)};
    out.validate();
    return out;
}

std::string format_csv(const Dataset& dataset) {
    dataset.validate();
    std::string out;
    for (int d = 0; d < dataset.dimension(); ++d) out += 'f' + std::to_string(d) + ',';
    out += "label\n";
    char buf[32];
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        for (int d = 0; d < dataset.dimension(); ++d) {
            std::snprintf(buf, sizeof buf, "%.17g,", dataset.features(static_cast<Eigen::Index>(i), d));
            out += buf;
        }
        out += std::to_string(dataset.labels[i]) + '\n';
    }
    return out;
}

void write_csv(const Dataset& dataset, const std::filesystem::path& path) {
    const std::string text = format_csv(dataset);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

SplitResult split(const Dataset& dataset, double test_fraction, std::uint64_t seed) {
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
        throw ArgumentError("test fraction must be in (0, 1)");
    }
    SplitResult out;
    Rng rng(seed);
    for (int c = 0; c < dataset.num_classes(); ++c) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < dataset.size(); ++i)
            if (dataset.labels[i] == c) members.push_back(i);
        if (members.empty()) continue;
        if (members.size() == 1) {
            out.warnings.push_back("class " + std::to_string(c) + " (" + dataset.class_names[c] +
                                   ") has a single sample; kept in train");
            out.train_indices.push_back(members.front());
            continue;
        }
        for (std::size_t k = members.size() - 1; k > 0; --k) {
            std::swap(members[k], members[rng.uniform_index(k + 1)]);
        }
        auto n_test = static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(members.size())));
        n_test = std::min(n_test, members.size() - 1);
        out.test_indices.insert(out.test_indices.end(), members.begin(), members.begin() + n_test);
        out.train_indices.insert(out.train_indices.end(), members.begin() + n_test, members.end());
    }
    std::sort(out.train_indices.begin(), out.train_indices.end());
    std::sort(out.test_indices.begin(), out.test_indices.end());
    out.train = dataset.subset(out.train_indices);
    out.test = dataset.subset(out.test_indices);
    return out;
}

}  // namespace qsvm
