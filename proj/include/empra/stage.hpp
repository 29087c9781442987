// Copyright 2026 The EMPRA Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace empra {

/// Which part of an attack the calling thread is executing. Scorer test
/// doubles read this to check that the victim is only queried for rank
/// evaluation.
enum class AttackStage { idle, generation, construction, evaluation };

AttackStage current_stage() noexcept;

/// Sets the calling thread's stage for the lifetime of the scope.
class StageScope {
public:
    explicit StageScope(AttackStage stage) noexcept;
    ~StageScope();
    StageScope(const StageScope&) = delete;
    StageScope& operator=(const StageScope&) = delete;

private:
    AttackStage previous_;
};

}  // namespace empra
