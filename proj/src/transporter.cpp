// Copyright 2026 The EMPRA Authors
// SPDX-License-Identifier: Apache-2.0

#include "empra/transporter.hpp"

#include <cmath>
#include <string>

#include "empra/errors.hpp"

namespace empra {

std::string_view to_string(BoundMode m) {
    return m == BoundMode::grad_clip ? "grad-clip" : "ball-project";
}

BoundMode parse_bound_mode(std::string_view s) {
    if (s == "grad-clip" || s == "grad_clip") return BoundMode::grad_clip;
    if (s == "ball-project" || s == "ball_project") return BoundMode::ball_project;
    throw ContractError("unknown bound mode '" + std::string(s) + "'");
}

void TransportParams::validate() const {
    if (!(eta > 0.0) || !std::isfinite(eta)) throw ContractError("eta must be positive");
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw ContractError("epsilon must be positive");
}

EmbeddingVector transport_step(const EmbeddingVector& s, const EmbeddingVector& anchor, const TransportParams& params,
                               const std::optional<EmbeddingVector>& origin) {
    if (s.dim() != anchor.dim()) throw ContractError("transport_step: dimension mismatch");
    const auto step = clip_vec(cosine_gradient(s, anchor), -params.epsilon, params.epsilon);
    auto next = axpy(s, params.eta, step);
    if (params.bound_mode == BoundMode::ball_project) {
        if (!origin) throw ContractError("transport_step: ball_project mode needs the starting embedding");
        next = project_linf(next, *origin, params.epsilon);
    }
    return next;
}

Trajectory transport(const EmbeddingVector& s0, const EmbeddingVector& anchor, const TransportParams& params) {
    params.validate();
    if (s0.dim() != anchor.dim()) throw ContractError("transport: dimension mismatch");
    Trajectory traj;
    traj.anchor = anchor;
    traj.states.reserve(params.iters + 1);
    traj.states.push_back(s0);
    const std::optional<EmbeddingVector> origin = s0;
    for (std::size_t t = 0; t < params.iters; ++t) {
        traj.states.push_back(transport_step(traj.states.back(), anchor, params, origin));
    }
    return traj;
}

}  // namespace empra
