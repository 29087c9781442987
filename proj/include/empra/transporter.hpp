// Copyright 2026 The EMPRA Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "empra/vecmath.hpp"

namespace empra {

enum class BoundMode {
    /// Clip each gradient component to [-epsilon, epsilon] before the step.
    grad_clip,
    /// As grad_clip, then project the state onto the L-inf ball of radius
    /// epsilon around the starting embedding.
    ball_project,
};

std::string_view to_string(BoundMode m);
BoundMode parse_bound_mode(std::string_view s);

struct TransportParams {
    double eta = 0.1;
    double epsilon = 0.01;
    std::size_t iters = 25;
    BoundMode bound_mode = BoundMode::grad_clip;

    void validate() const;
};

struct Trajectory {
    std::vector<EmbeddingVector> states;  // s(0) .. s(iters)
    EmbeddingVector anchor;

    const EmbeddingVector& final_state() const { return states.back(); }
};

/// One ascent step on cosine(s, anchor): s + eta * clip(grad, -eps, eps).
/// In ball_project mode `origin` is the projection center and is required.
EmbeddingVector transport_step(const EmbeddingVector& s, const EmbeddingVector& anchor, const TransportParams& params,
                               const std::optional<EmbeddingVector>& origin = std::nullopt);

/// Runs exactly params.iters steps from s0 toward the anchor.
Trajectory transport(const EmbeddingVector& s0, const EmbeddingVector& anchor, const TransportParams& params);

}  // namespace empra
