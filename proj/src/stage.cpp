// Copyright 2026 The EMPRA Authors
// SPDX-License-Identifier: Apache-2.0

#include "empra/stage.hpp"

namespace empra {

namespace {
thread_local AttackStage tls_stage = AttackStage::idle;
}

AttackStage current_stage() noexcept { return tls_stage; }

StageScope::StageScope(AttackStage stage) noexcept : previous_(tls_stage) { tls_stage = stage; }

StageScope::~StageScope() { tls_stage = previous_; }

}  // namespace empra
