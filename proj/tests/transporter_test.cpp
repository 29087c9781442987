// Copyright 2026 The EMPRA Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>

#include "empra/errors.hpp"
#include "empra/transporter.hpp"

namespace empra {
namespace {

EmbeddingVector V(std::vector<double> v) { return EmbeddingVector(std::move(v)); }

EmbeddingVector random_vec(std::mt19937_64& rng, std::size_t dim) {
    std::normal_distribution<double> n(0.0, 1.0);
    std::vector<double> v(dim);
    for (auto& x : v) x = n(rng);
    return EmbeddingVector(std::move(v));
}

TEST(Params, DefaultsAndValidation) {
    TransportParams p;
    EXPECT_DOUBLE_EQ(p.eta, 0.1);
    EXPECT_DOUBLE_EQ(p.epsilon, 0.01);
    EXPECT_EQ(p.iters, 25u);
    EXPECT_EQ(p.bound_mode, BoundMode::grad_clip);
    EXPECT_NO_THROW(p.validate());
    p.eta = 0.0;
    EXPECT_THROW(p.validate(), ContractError);
    p = {};
    p.epsilon = -1.0;
    EXPECT_THROW(p.validate(), ContractError);
}

TEST(Params, BoundModeNames) {
    EXPECT_EQ(parse_bound_mode("grad-clip"), BoundMode::grad_clip);
    EXPECT_EQ(parse_bound_mode("ball-project"), BoundMode::ball_project);
    EXPECT_EQ(to_string(BoundMode::ball_project), "ball-project");
    EXPECT_THROW(parse_bound_mode("l2"), ContractError);
}

TEST(Step, Examples) {
    const TransportParams p;
    const auto a = V({0.2, -0.4, 0.9});
    EXPECT_EQ(transport_step(a, a, p), a);

    const auto s = transport_step(V({1, 0}), V({0, 1}), p);
    EXPECT_DOUBLE_EQ(s[0], 1.0);
    EXPECT_NEAR(s[1], 0.001, 1e-18);

    EXPECT_EQ(transport_step(a, EmbeddingVector::zeros(3), p), a);
    EXPECT_THROW(transport_step(V({1, 0}), V({1, 0, 0}), p), ContractError);

    TransportParams ball;
    ball.bound_mode = BoundMode::ball_project;
    EXPECT_THROW(transport_step(V({1, 0}), V({0, 1}), ball), ContractError);
}

TEST(Transport, Examples) {
    TransportParams p;
    p.iters = 0;
    const auto s0 = V({1, 2});
    const auto t0 = transport(s0, V({2, 1}), p);
    ASSERT_EQ(t0.states.size(), 1u);
    EXPECT_EQ(t0.final_state(), s0);

    const auto same = transport(s0, s0, TransportParams{});
    ASSERT_EQ(same.states.size(), 26u);
    for (const auto& s : same.states) EXPECT_EQ(s, s0);
}

TEST(Transport, ImprovesCosineOnFixtures) {
    std::mt19937_64 rng(20);
    for (int i = 0; i < 20; ++i) {
        const auto s0 = random_vec(rng, 16);
        const auto a = random_vec(rng, 16);
        const auto traj = transport(s0, a, TransportParams{});
        EXPECT_GE(cosine(traj.final_state(), a), cosine(s0, a));
    }
}

TEST(Transport, BoundsHold) {
    std::mt19937_64 rng(31);
    TransportParams clip;
    TransportParams ball;
    ball.bound_mode = BoundMode::ball_project;
    // A large step makes the projection actually bind.
    TransportParams big_ball = ball;
    big_ball.eta = 10.0;
    for (int i = 0; i < 100; ++i) {
        const auto s0 = random_vec(rng, 16);
        const auto a = random_vec(rng, 16);
        const auto tc = transport(s0, a, clip);
        for (std::size_t t = 0; t + 1 < tc.states.size(); ++t) {
            EXPECT_LE(linf_distance(tc.states[t + 1], tc.states[t]), clip.eta * clip.epsilon + 1e-12);
        }
        for (const auto* params : {&ball, &big_ball}) {
            const auto tb = transport(s0, a, *params);
            for (const auto& s : tb.states) EXPECT_LE(linf_distance(s, s0), params->epsilon + 1e-12);
        }
    }
}

TEST(Transport, DeterministicAndScaleInvariantInAnchor) {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 20; ++i) {
        const auto s0 = random_vec(rng, 16);
        const auto a = random_vec(rng, 16);
        const auto t1 = transport(s0, a, TransportParams{});
        const auto t2 = transport(s0, a, TransportParams{});
        EXPECT_EQ(t1.states, t2.states);
        const auto t3 = transport(s0, scaled(a, 4.0), TransportParams{});
        for (std::size_t t = 0; t < t1.states.size(); ++t) {
            EXPECT_LE(linf_distance(t1.states[t], t3.states[t]), 1e-12);
        }
    }
}

}  // namespace
}  // namespace empra
