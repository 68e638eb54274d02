#include <doctest.h>

#include <random>

#include "gdr/error.hpp"
#include "gdr/newtonian.hpp"
#include "oracles.hpp"

using namespace gdr;

TEST_CASE("pair_distance") {
    CHECK(pair_distance(Eigen::Vector3d(0, 0, 0), Eigen::Vector3d(3, 4, 0)) == 5.0);
    CHECK(pair_distance(Eigen::Vector3d(1, 2, 3), Eigen::Vector3d(1, 2, 3)) == 0.0);
    std::mt19937_64 rng(1);
    Matrix p = oracle::random_points(rng, 7, 2);
    CHECK(std::abs(pair_distance(p.col(0), p.col(1)) - oracle::dist(p, 0, 1)) < 1e-12);
    CHECK_THROWS_AS(pair_distance(Eigen::Vector2d(0, 0), Eigen::Vector3d(0, 0, 0)),
                    InvalidArgument);
}

TEST_CASE("pair_move") {
    const StepGuards plain;
    StepGuards capped;
    capped.per_pair_cap = true;
    CHECK(pair_move(Eigen::Vector3d(0, 0, 0), Eigen::Vector3d(2, 0, 0), plain) ==
          Vector(Eigen::Vector3d(-1, 0, 0)));
    CHECK(pair_move(Eigen::Vector3d(0, 0, 0), Eigen::Vector3d(0.5, 0, 0), capped) ==
          Vector(Eigen::Vector3d(-0.5, 0, 0)));
    // without the cap a close pair still moves by a unit step
    CHECK(pair_move(Eigen::Vector3d(0, 0, 0), Eigen::Vector3d(0.5, 0, 0), plain) ==
          Vector(Eigen::Vector3d(-1, 0, 0)));
    CHECK(pair_move(Eigen::Vector3d(1, 1, 1), Eigen::Vector3d(1, 1, 1), plain).isZero(0.0));
    CHECK(pair_move(Eigen::Vector3d(0, 0, 0), Eigen::Vector3d(1e-7, 0, 0), plain).isZero(0.0));

    std::mt19937_64 rng(6);
    for (int t = 0; t < 100; ++t) {
        Matrix p = oracle::random_points(rng, 5, 2, 10.0);
        CHECK(pair_move(p.col(0), p.col(1), plain).norm() == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("StepGuards validation") {
    StepGuards g;
    g.r_min = 0.0;
    CHECK_THROWS_AS(g.validate(), InvalidArgument);
    g = {};
    g.step_scale = -1.0;
    CHECK_THROWS_AS(g.validate(), InvalidArgument);
    auto s = stabilized_guards(5);
    CHECK(s.per_pair_cap);
    CHECK(s.step_scale == 0.25);
}

TEST_CASE("newtonian_pass") {
    SUBCASE("two-point hand trace") {
        Matrix p(3, 2);
        p << 0, 2, 0, 0, 0, 0;
        newtonian_pass(p, StepGuards{});
        // x2 moves a unit toward x1, then x1 a unit toward the moved x2
        CHECK(p.col(0) == Vector(Eigen::Vector3d(1, 0, 0)));
        CHECK(p.col(1) == Vector(Eigen::Vector3d(1, 0, 0)));
    }
    SUBCASE("later points see moved positions") {
        Matrix p(1, 3);
        p << 0, 4, 10;
        newtonian_pass(p, StepGuards{});
        // j=2: pulls from 0 and 4 -> 10 - 2 = 8
        // j=1: pulls from 0 (-1) and 8 (+1) -> 4
        // j=0: pulls from 4 and 8 -> 2
        CHECK(p(0, 2) == 8.0);
        CHECK(p(0, 1) == 4.0);
        CHECK(p(0, 0) == 2.0);
    }
    SUBCASE("singleton is unchanged") {
        Matrix p = Matrix::Constant(4, 1, 3.0);
        newtonian_pass(p, StepGuards{});
        CHECK(p == Matrix::Constant(4, 1, 3.0));
    }
    SUBCASE("deterministic") {
        std::mt19937_64 rng(10);
        ClassBundle b{oracle::random_points(rng, 6, 25), {}, 0};
        auto a1 = newtonian_pass(b, StepGuards{});
        auto a2 = newtonian_pass(b, StepGuards{});
        CHECK(a1.points == a2.points);
    }
    SUBCASE("stabilized moves stay inside the reach of the attractors") {
        std::mt19937_64 rng(13);
        Matrix p = oracle::random_points(rng, 3, 20, 0.3);
        const auto guards = stabilized_guards(20);
        for (Eigen::Index j = 19; j >= 0; --j) {
            Vector delta = Vector::Zero(3);
            double reach = 0.0;
            for (Eigen::Index i = 0; i < 20; ++i) {
                if (i == j) continue;
                delta += pair_move(p.col(i), p.col(j), guards);
                reach = std::max(reach, (p.col(i) - p.col(j)).norm());
            }
            CHECK(guards.step_scale * delta.norm() <= reach + 1e-12);
            p.col(j) += guards.step_scale * delta;
        }
    }
}
