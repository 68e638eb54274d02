#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "gdr/engine.hpp"
#include "gdr/error.hpp"
#include "oracles.hpp"

using namespace gdr;

namespace {

IterationReport total(double v) {
    IterationReport r;
    r.total_variance = v;
    return r;
}

LabeledDataset two_point_class() {
    Matrix p(3, 2);
    p << 0, 2, 0, 0, 0, 0;
    return LabeledDataset(p, {0, 0});
}

} // namespace

TEST_CASE("intra_class_variance") {
    Matrix p(2, 2);
    p << 0, 2, 0, 0;
    auto v = intra_class_variance(LabeledDataset(p, {0, 0}));
    CHECK(v.per_class == std::vector<double>{1.0});
    CHECK(v.total == 1.0);

    auto flat = intra_class_variance(LabeledDataset(Matrix::Constant(3, 4, 1.5), {0, 0, 1, 1}));
    CHECK(flat.total == 0.0);

    std::mt19937_64 rng(4);
    Matrix r = oracle::random_points(rng, 5, 60, 2.0);
    std::vector<int> y(60);
    for (int j = 0; j < 60; ++j) y[j] = (j * 7) % 4;
    LabeledDataset data(r, y);
    auto got = intra_class_variance(data);
    auto expect = oracle::class_variance_pairs(r, y, 4);
    double weighted = 0.0;
    for (int k = 0; k < 4; ++k) {
        CHECK(std::abs(got.per_class[k] - expect[k]) < 1e-10);
        weighted += 15.0 / 60.0 * got.per_class[k];
    }
    CHECK(std::abs(got.total - weighted) < 1e-12);
}

TEST_CASE("knn_loo_accuracy") {
    Matrix sep(1, 6);
    sep << 0, 0.1, 0.2, 10, 10.1, 10.2;
    CHECK(knn_loo_accuracy(LabeledDataset(sep, {0, 0, 0, 1, 1, 1})) == 1.0);
    CHECK(knn_loo_accuracy(LabeledDataset(sep, {0, 0, 0, 0, 0, 0})) == 1.0);

    // two classes sharing the same positions: each point's nearest is its
    // twin at distance 0 in the other class
    Matrix twin(2, 8);
    twin << 0, 0, 1, 1, 5, 5, 9, 9,
            0, 0, 0, 0, 2, 2, 3, 3;
    std::vector<int> y{0, 1, 1, 0, 0, 1, 1, 0};
    const double got = knn_loo_accuracy(LabeledDataset(twin, y));
    CHECK(got == oracle::knn_loo(twin, y));
    CHECK(got == 0.0);

    std::mt19937_64 rng(19);
    Matrix r = oracle::random_points(rng, 3, 40);
    std::vector<int> yr(40);
    for (int j = 0; j < 40; ++j) yr[j] = j % 3;
    CHECK(knn_loo_accuracy(LabeledDataset(r, yr)) == oracle::knn_loo(r, yr));

    CHECK_THROWS_AS(knn_loo_accuracy(LabeledDataset(Matrix::Zero(2, 1), {0})), InvalidArgument);
}

TEST_CASE("has_converged") {
    CHECK(has_converged({total(10.0), total(9.999)}, 1e-3));
    CHECK_FALSE(has_converged({total(10.0), total(5.0)}, 1e-3));
    CHECK_FALSE(has_converged({total(10.0)}, 1e-3));
    CHECK_FALSE(has_converged({}, 1e-3));
    CHECK(has_converged({total(0.0), total(0.0)}, 1e-3));
    CHECK_FALSE(has_converged({total(10.0), total(9.999)}, 0.0));
}

TEST_CASE("GdrConfig validation") {
    GdrConfig c;
    CHECK_NOTHROW(c.validate());
    c.method = Method::Schwarzschild;
    c.use_pca = false;
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
    c = {};
    c.max_iter = 0;
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
    c = {};
    c.tol = -1;
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
    CHECK(parse_method("minkowski") == Method::Minkowski);
    CHECK_THROWS_AS(parse_method("einstein"), InvalidArgument);
}

TEST_CASE("run_gdr small cases") {
    SUBCASE("singleton classes are left alone") {
        Matrix p(3, 2);
        p << 0, 5, 1, 6, 2, 7;
        GdrConfig c;
        c.use_pca = false;
        c.max_iter = 1;
        auto r = run_gdr(LabeledDataset(p, {0, 1}), c);
        CHECK(r.transformed.points() == p);
    }
    SUBCASE("two-point class collapses in one iteration") {
        GdrConfig c;
        c.use_pca = false;
        c.max_iter = 1;
        auto r = run_gdr(two_point_class(), c);
        CHECK(r.transformed.points().col(0) == Vector(Eigen::Vector3d(1, 0, 0)));
        CHECK(r.transformed.points().col(1) == Vector(Eigen::Vector3d(1, 0, 0)));
        CHECK(r.initial.total_variance == 1.0);
        REQUIRE(r.reports.size() == 1);
        CHECK(r.reports[0].total_variance == 0.0);
    }
    SUBCASE("relativity without PCA is rejected") {
        GdrConfig c;
        c.method = Method::Minkowski;
        c.use_pca = false;
        CHECK_THROWS_AS(run_gdr(two_point_class(), c), InvalidArgument);
    }
    SUBCASE("PCA path needs three features") {
        LabeledDataset flat(Matrix::Random(2, 6), {0, 0, 0, 1, 1, 1});
        CHECK_THROWS_AS(run_gdr(flat, GdrConfig{}), InvalidArgument);
    }
}

TEST_CASE("run_gdr pipeline properties") {
    auto data = make_blobs({4, 15, 8, 1.0, 6.0, 3});
    // shuffle sample order so that classes interleave
    std::mt19937_64 rng(99);
    std::vector<Eigen::Index> order(60);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    Matrix pts(8, 60);
    std::vector<int> y(60);
    for (int j = 0; j < 60; ++j) {
        pts.col(j) = data.points().col(order[j]);
        y[j] = data.labels()[order[j]];
    }
    std::vector<int> y_dense(60);
    {
        std::vector<int> map(4, -1);
        int next = 0;
        for (int j = 0; j < 60; ++j) {
            if (map[y[j]] < 0) map[y[j]] = next++;
            y_dense[j] = map[y[j]];
        }
    }
    LabeledDataset shuffled(pts, y_dense);

    for (auto method : {Method::Newtonian, Method::Schwarzschild, Method::Minkowski}) {
        CAPTURE(to_string(method));
        GdrConfig c;
        c.method = method;
        c.tol = 0.0;
        auto a = run_gdr(shuffled, c);
        auto b = run_gdr(shuffled, c);
        CHECK(a.transformed.labels() == shuffled.labels());
        CHECK(a.transformed.dim() == shuffled.dim());
        CHECK(a.transformed.size() == shuffled.size());
        CHECK(a.transformed.points() == b.transformed.points());
        CHECK(a.reports.size() == 6);
        for (const auto& r : a.reports) {
            double weighted = 0.0;
            for (int k = 0; k < 4; ++k) {
                weighted += static_cast<double>(shuffled.class_indices(k).size()) / 60.0 *
                            r.per_class_variance[k];
            }
            CHECK(std::abs(weighted - r.total_variance) <= 1e-12 * (1.0 + r.total_variance));
        }

        c.parallel_classes = true;
        auto par = run_gdr(shuffled, c);
        CHECK(par.transformed.points() == a.transformed.points());
    }
}

TEST_CASE("run_gdr keeps sample order (sentinel labels)") {
    // singleton sentinel classes interleaved with one moving class: in the
    // input space the sentinels must come back bit-for-bit in their columns
    std::mt19937_64 rng(8);
    Matrix p = oracle::random_points(rng, 4, 16, 3.0);
    std::vector<int> y(16);
    int next = 1;
    for (int j = 0; j < 16; ++j) y[j] = j % 2 == 0 ? 0 : next++;
    GdrConfig c;
    c.use_pca = false;
    c.max_iter = 3;
    c.tol = 0.0;
    auto r = run_gdr(LabeledDataset(p, y), c);
    for (int j = 1; j < 16; j += 2) CHECK(r.transformed.points().col(j) == p.col(j));
    for (int j = 0; j < 16; j += 2) CHECK(r.transformed.points().col(j) != p.col(j));
    CHECK(r.transformed.labels() == y);
}

TEST_CASE("run_gdr stops at convergence") {
    GdrConfig c;
    c.use_pca = false;
    c.max_iter = 10;
    c.tol = 1e-3;
    auto r = run_gdr(two_point_class(), c);
    // variance hits 0 after one pass, stays 0 on the next
    CHECK(r.reports.size() == 2);

    int calls = 0;
    run_gdr(two_point_class(), c, [&](const IterationReport& rep, const LabeledDataset& snap) {
        CHECK(rep.iteration == calls);
        CHECK(snap.size() == 2);
        ++calls;
    });
    CHECK(calls == 3);
}

TEST_CASE("stabilized Newtonian keeps variance non-increasing on blobs") {
    auto data = make_blobs({5, 30, 10, 1.0, 8.0, 21});
    GdrConfig c;
    c.stabilized = true;
    c.tol = 0.0;
    c.max_iter = 8;
    auto r = run_gdr(data, c);
    double prev = r.initial.total_variance;
    for (const auto& rep : r.reports) {
        CHECK(rep.total_variance <= prev);
        prev = rep.total_variance;
    }
}
