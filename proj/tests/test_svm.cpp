#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "oracles.hpp"
#include "qsvm/errors.hpp"
#include "qsvm/random.hpp"
#include "qsvm/svm.hpp"

using namespace qsvm;

namespace {

constexpr double kPi = std::numbers::pi;

RowMatrix random_rows(Eigen::Index m, Eigen::Index d, Rng& rng, double lo = 0.0, double hi = kPi) {
    RowMatrix r(m, d);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < d; ++j) r(i, j) = rng.uniform(lo, hi);
    return r;
}

Eigen::VectorXd as_vector(const std::vector<int>& y) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(y.size()));
    for (std::size_t i = 0; i < y.size(); ++i) v(static_cast<Eigen::Index>(i)) = y[i];
    return v;
}

/// Full alpha vector (nonnegative) from a solved model.
Eigen::VectorXd alphas(const BinarySvm& model, const std::vector<int>& y) {
    Eigen::VectorXd a = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(y.size()));
    for (std::size_t s = 0; s < model.support_indices.size(); ++s) {
        const auto i = model.support_indices[s];
        a(static_cast<Eigen::Index>(i)) = model.dual_coefs[s] * y[i];
    }
    return a;
}

std::vector<int> random_labels(std::size_t n, Rng& rng) {
    std::vector<int> y(n);
    do {
        for (auto& v : y) v = rng.uniform() < 0.5 ? 1 : -1;
    } while (std::all_of(y.begin(), y.end(), [&](int v) { return v == y[0]; }));
    return y;
}

std::vector<double> kernel_row(const KernelDescriptor& k, const RowMatrix& train, std::span<const double> x) {
    RowMatrix probe(1, train.cols());
    for (Eigen::Index c = 0; c < train.cols(); ++c) probe(0, c) = x[c];
    const auto block = gram_cross(k, train, probe);
    return {block.values.data(), block.values.data() + block.values.size()};
}

}  // namespace

TEST_CASE("two points, one per class") {
    Eigen::MatrixXd k(2, 2);
    k << 1.0, 0.3,
         0.3, 1.0;
    const std::vector<int> y{1, -1};
    const auto model = solve_binary(k, y);
    CHECK(model.support_indices.size() == 2);
    const std::vector<double> r0{1.0, 0.3}, r1{0.3, 1.0};
    CHECK(decision_value(model, r0) > 0.0);
    CHECK(decision_value(model, r1) < 0.0);
}

TEST_CASE("dual optimum on the 4-point XOR problem") {
    const QuantumKernel kernel{default_spec(2), KernelMode::exact()};
    RowMatrix x(4, 2);
    x << kPi / 4, kPi / 4,
         3 * kPi / 4, 3 * kPi / 4,
         kPi / 4, 3 * kPi / 4,
         3 * kPi / 4, kPi / 4;
    const std::vector<int> y{1, 1, -1, -1};
    const auto g = gram(kernel, x);
    const auto model = solve_binary(g.values, y);
    const double grid = oracle::grid_dual_objective_4(g.values, 1.0, 1e-3);
    const double exact = oracle::solve_dual_exact(g.values, as_vector(y), 1.0).objective;
    CHECK(std::abs(model.objective - grid) <= 1e-3);
    CHECK(std::abs(model.objective - exact) <= 1e-6);
    CHECK(grid <= exact + 1e-12);
}

TEST_CASE("objective matches the exact active-set oracle") {
    Rng rng(3);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 2 + trial % 5;
        const auto x = random_rows(n, 2, rng);
        const auto y = random_labels(n, rng);
        const double c = trial % 3 == 0 ? 0.5 : (trial % 3 == 1 ? 1.0 : 10.0);
        const KernelDescriptor k = trial % 2 ? KernelDescriptor{RbfKernel{0.7}}
                                             : KernelDescriptor{QuantumKernel{default_spec(2), KernelMode::exact()}};
        const auto g = gram(k, x);
        const auto model = solve_binary(g.values, y, {c, 1e-8, 10000});
        const auto best = oracle::solve_dual_exact(g.values, as_vector(y), c);
        CHECK(std::abs(model.objective - best.objective) <= 1e-6);

        // the reported objective is the objective of the returned coefficients
        const Eigen::VectorXd a = alphas(model, y);
        CHECK(std::abs(oracle::dual_objective(g.values, as_vector(y), a) - model.objective) <= 1e-9);
    }
}

TEST_CASE("box and equality constraints hold") {
    Rng rng(4);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 4 + trial;
        const auto x = random_rows(n, 3, rng);
        const auto y = random_labels(n, rng);
        const double c = 0.1 + trial * 0.2;
        const auto g = gram(RbfKernel{1.5}, x);
        const auto model = solve_binary(g.values, y, {c, 1e-3, 10000});
        double sum = 0.0;
        for (double coef : model.dual_coefs) {
            CHECK(std::abs(coef) > 0.0);
            CHECK(std::abs(coef) <= c + 1e-12);
            sum += coef;
        }
        CHECK(std::abs(sum) <= 1e-6);
        CHECK(model.training_size == static_cast<std::size_t>(n));
    }
}

TEST_CASE("free support vectors sit on the margin") {
    Rng rng(5);
    const auto x = random_rows(20, 2, rng);
    const auto y = random_labels(20, rng);
    const auto g = gram(RbfKernel{2.0}, x);
    const SvmOptions opts{1.0, 1e-3, 10000};
    const auto model = solve_binary(g.values, y, opts);
    int free = 0;
    for (std::size_t s = 0; s < model.support_indices.size(); ++s) {
        if (std::abs(model.dual_coefs[s]) >= opts.C - 1e-9) continue;
        ++free;
        const auto i = static_cast<Eigen::Index>(model.support_indices[s]);
        std::vector<double> r(20);
        for (int c = 0; c < 20; ++c) r[c] = g.values(i, c);
        CHECK(std::abs(decision_value(model, r) - y[model.support_indices[s]]) <= opts.tol);
    }
    CHECK(free > 0);
}

TEST_CASE("decision value") {
    Eigen::MatrixXd k(2, 2);
    k << 1.0, 0.1,
         0.1, 1.0;
    const std::vector<int> y{1, -1};
    const auto model = solve_binary(k, y);
    const std::vector<double> zero(2, 0.0);
    CHECK(decision_value(model, zero) == model.bias);
    const std::vector<double> wrong(3, 0.0);
    CHECK_THROWS_AS(decision_value(model, wrong), ArgumentError);
}

TEST_CASE("flipping every label flips the decision function") {
    Rng rng(6);
    for (int trial = 0; trial < 10; ++trial) {
        const auto x = random_rows(12, 2, rng);
        auto y = random_labels(12, rng);
        const QuantumKernel k{default_spec(2), KernelMode::exact()};
        const auto g = gram(k, x);
        const auto model = solve_binary(g.values, y);
        for (auto& v : y) v = -v;
        const auto flipped = solve_binary(g.values, y);
        for (int p = 0; p < 5; ++p) {
            const auto probe = random_rows(1, 2, rng);
            const auto row = kernel_row(k, x, row_span(probe, 0));
            CHECK(std::abs(decision_value(model, row) + decision_value(flipped, row)) <= 1e-10);
        }
    }
}

TEST_CASE("duplicating every training point leaves a hard-margin solution unchanged") {
    // two separated groups; C is large enough that no multiplier reaches its bound
    Rng rng(7);
    RowMatrix x(8, 2);
    std::vector<int> y(8);
    for (int i = 0; i < 8; ++i) {
        const double centre = i < 4 ? -1.5 : 1.5;
        x(i, 0) = centre + rng.uniform(-0.5, 0.5);
        x(i, 1) = rng.uniform(-0.5, 0.5);
        y[i] = i < 4 ? 1 : -1;
    }
    RowMatrix twice(16, 2);
    twice << x, x;
    std::vector<int> y2 = y;
    y2.insert(y2.end(), y.begin(), y.end());

    const RbfKernel k{0.5};
    const SvmOptions opts{1000.0, 1e-9, 100000};
    const auto once = solve_binary(gram(k, x).values, y, opts);
    const auto doubled = solve_binary(gram(k, twice).values, y2, opts);
    for (double coef : once.dual_coefs) REQUIRE(std::abs(coef) < opts.C / 2);
    for (int p = 0; p < 10; ++p) {
        const auto probe = random_rows(1, 2, rng, -3.0, 3.0);
        const double a = decision_value(once, kernel_row(k, x, row_span(probe, 0)));
        const double b = decision_value(doubled, kernel_row(k, twice, row_span(probe, 0)));
        CHECK(std::abs(a - b) <= 1e-6);
    }
}

TEST_CASE("solver errors") {
    Eigen::MatrixXd k = Eigen::MatrixXd::Identity(3, 3);
    const std::vector<int> same{1, 1, 1};
    CHECK_THROWS_AS(solve_binary(k, same), ArgumentError);
    const std::vector<int> bad{1, 0, -1};
    CHECK_THROWS_AS(solve_binary(k, bad), ArgumentError);
    const std::vector<int> short_y{1, -1};
    CHECK_THROWS_AS(solve_binary(k, short_y), ArgumentError);
    const std::vector<int> y{1, -1, 1};
    CHECK_THROWS_AS(solve_binary(k, y, {0.0, 1e-3, 10}), ConfigError);
    CHECK_THROWS_AS(solve_binary(k, y, {1.0, 0.0, 10}), ConfigError);
    CHECK_THROWS_AS(solve_binary(k, y, {1.0, 1e-3, 0}), ConfigError);
    CHECK_THROWS_AS(solve_binary(Eigen::MatrixXd::Identity(3, 2), y), ArgumentError);

    Rng rng(8);
    const auto x = random_rows(40, 2, rng);
    const auto labels = random_labels(40, rng);
    const auto g = gram(RbfKernel{5.0}, x);
    try {
        solve_binary(g.values, labels, {100.0, 1e-12, 1});
        FAIL("expected non-convergence");
    } catch (const SolverError& e) {
        CHECK(std::string(e.what()).find("violation") != std::string::npos);
    }
}

namespace {

struct Clusters {
    RowMatrix x;
    std::vector<int> y;
};

Clusters separated_clusters(int classes, int per_class, Rng& rng) {
    Clusters out{RowMatrix(classes * per_class, 2), {}};
    for (int c = 0; c < classes; ++c) {
        const double angle = 2.0 * kPi * c / classes;
        for (int s = 0; s < per_class; ++s) {
            const auto row = c * per_class + s;
            out.x(row, 0) = 4.0 * std::cos(angle) + 0.3 * rng.normal();
            out.x(row, 1) = 4.0 * std::sin(angle) + 0.3 * rng.normal();
            out.y.push_back(c);
        }
    }
    return out;
}

}  // namespace

TEST_CASE("one-vs-one ensemble") {
    Rng rng(9);
    const RbfKernel k{0.5};

    SUBCASE("pair counts") {
        for (int classes : {2, 3, 6}) {
            const auto data = separated_clusters(classes, 4, rng);
            const auto model = fit_multiclass(gram(k, data.x), data.y);
            CHECK(model.pairwise.size() == static_cast<std::size_t>(classes * (classes - 1) / 2));
            CHECK(model.classes.size() == static_cast<std::size_t>(classes));
            CHECK(model.jitter == 0.0);
        }
    }
    SUBCASE("separated clusters are fit perfectly and training rows are recovered") {
        const auto data = separated_clusters(3, 10, rng);
        const auto model = fit_multiclass(gram(k, data.x), data.y);
        const auto pred = predict(model, gram_cross(k, data.x, data.x));
        CHECK(pred.labels == data.y);
        for (const auto& votes : pred.votes) CHECK(std::accumulate(votes.begin(), votes.end(), 0) == 3);
    }
    SUBCASE("two classes reduce to the decision sign") {
        const auto data = separated_clusters(2, 6, rng);
        const auto model = fit_multiclass(gram(k, data.x), data.y);
        const auto probes = random_rows(10, 2, rng, -5.0, 5.0);
        const auto block = gram_cross(k, data.x, probes);
        const auto pred = predict(model, block);
        for (Eigen::Index r = 0; r < 10; ++r) {
            std::vector<double> row(block.values.cols());
            for (Eigen::Index c = 0; c < block.values.cols(); ++c) row[c] = block.values(r, c);
            const double f = decision_value(model.pairwise[0].model, row);
            CHECK(pred.labels[r] == (f > 0.0 ? 0 : 1));
        }
    }
    SUBCASE("permuting test rows permutes predictions") {
        const auto data = separated_clusters(4, 5, rng);
        const auto model = fit_multiclass(gram(k, data.x), data.y);
        const auto probes = random_rows(12, 2, rng, -5.0, 5.0);
        std::vector<Eigen::Index> perm(12);
        std::iota(perm.begin(), perm.end(), 0);
        std::reverse(perm.begin(), perm.end());
        RowMatrix shuffled(12, 2);
        for (Eigen::Index r = 0; r < 12; ++r) shuffled.row(r) = probes.row(perm[r]);
        const auto a = predict(model, gram_cross(k, data.x, probes));
        const auto b = predict(model, gram_cross(k, data.x, shuffled));
        for (Eigen::Index r = 0; r < 12; ++r) CHECK(b.labels[r] == a.labels[perm[r]]);
    }
    SUBCASE("non-contiguous labels keep their values") {
        auto data = separated_clusters(3, 5, rng);
        for (auto& v : data.y) v = v * 2 + 1;
        const auto model = fit_multiclass(gram(k, data.x), data.y);
        CHECK(model.classes == std::vector<int>{1, 3, 5});
        CHECK(predict(model, gram_cross(k, data.x, data.x)).labels == data.y);
    }
    SUBCASE("thread count does not change the models") {
        const auto data = separated_clusters(4, 6, rng);
        const auto g = gram(k, data.x);
        const auto a = fit_multiclass(g, data.y, {}, 1);
        const auto b = fit_multiclass(g, data.y, {}, 4);
        for (std::size_t p = 0; p < a.pairwise.size(); ++p) {
            CHECK(a.pairwise[p].model.dual_coefs == b.pairwise[p].model.dual_coefs);
            CHECK(a.pairwise[p].model.bias == b.pairwise[p].model.bias);
        }
    }
    SUBCASE("errors") {
        const auto data = separated_clusters(3, 4, rng);
        const auto model = fit_multiclass(gram(k, data.x), data.y);
        CHECK_THROWS_AS(predict(model, gram_cross(RbfKernel{0.6}, data.x, data.x)), ConfigError);
        auto block = gram_cross(k, data.x, data.x);
        block.values.conservativeResize(block.values.rows(), block.values.cols() - 1);
        CHECK_THROWS_AS(predict(model, block), ArgumentError);
        const std::vector<int> one_class(data.y.size(), 2);
        CHECK_THROWS_AS(fit_multiclass(gram(k, data.x), one_class), ArgumentError);
        const std::vector<int> short_y(3, 0);
        CHECK_THROWS_AS(fit_multiclass(gram(k, data.x), short_y), ArgumentError);
    }
}

TEST_CASE("vote ties") {
    // Three classes in a voting cycle: each wins exactly once.
    auto make = [](double b01, double b02, double b12) {
        MultiClassSvm m;
        m.classes = {0, 1, 2};
        m.kernel_id = "rbf:gamma=1";
        m.training_size = 1;
        for (auto [a, b, bias] : {std::tuple{0, 1, b01}, std::tuple{0, 2, b02}, std::tuple{1, 2, b12}}) {
            BinarySvm s;
            s.bias = bias;
            s.training_size = 1;
            m.pairwise.push_back({a, b, s});
        }
        return m;
    };
    KernelBlock block{Eigen::MatrixXd::Zero(1, 1), KernelMode::exact(), "rbf:gamma=1"};

    SUBCASE("broken by summed decision magnitude") {
        const auto pred = predict(make(0.5, -2.0, 1.0), block);
        CHECK(pred.votes[0] == std::vector<int>{1, 1, 1});
        CHECK(pred.labels[0] == 2);
    }
    SUBCASE("then by the lowest label") {
        CHECK(predict(make(1.0, -1.0, 1.0), block).labels[0] == 0);
    }
}

TEST_CASE("psd jitter") {
    GramMatrix exact{Eigen::MatrixXd::Identity(3, 3), KernelMode::exact(), "x"};
    CHECK(psd_jitter(exact) == 0.0);

    Eigen::MatrixXd indefinite(2, 2);
    indefinite << 1.0, 1.2,
                  1.2, 1.0;  // eigenvalues 2.2 and -0.2
    GramMatrix sampled{indefinite, KernelMode::shots_mode(100, 1), "x"};
    CHECK(psd_jitter(sampled) == doctest::Approx(0.2 + 1e-8).epsilon(1e-12));

    GramMatrix definite{Eigen::MatrixXd::Identity(2, 2), KernelMode::shots_mode(100, 1), "x"};
    CHECK(psd_jitter(definite) == doctest::Approx(1e-8));
}

TEST_CASE("shot-mode ensemble stores the jitter it used") {
    Rng rng(10);
    const QuantumKernel k{default_spec(2), KernelMode::shots_mode(64, 5)};
    const auto x = random_rows(12, 2, rng);
    std::vector<int> y(12);
    for (int i = 0; i < 12; ++i) y[i] = i % 3;
    const auto g = gram(k, x);
    const auto model = fit_multiclass(g, y);
    CHECK(model.jitter == psd_jitter(g));
    CHECK(model.jitter > 0.0);
}
