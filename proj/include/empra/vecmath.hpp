// Copyright 2026 The EMPRA Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace empra {

/// A dense embedding. Dimension is fixed at construction; components are finite.
class EmbeddingVector {
public:
    EmbeddingVector() = default;
    /// Throws ContractError on empty input or non-finite components.
    explicit EmbeddingVector(std::vector<double> values);

    static EmbeddingVector zeros(std::size_t dim);

    std::size_t dim() const noexcept { return values_.size(); }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }

    double norm() const;
    bool is_zero() const;

    friend bool operator==(const EmbeddingVector&, const EmbeddingVector&) = default;

private:
    std::vector<double> values_;
};

double dot(const EmbeddingVector& u, const EmbeddingVector& v);

/// Cosine similarity; 0 when either vector has zero norm.
double cosine(const EmbeddingVector& u, const EmbeddingVector& v);

/// Gradient of cosine(s, a) with respect to s:
///   a / (|s| |a|) - cosine(s, a) * s / |s|^2
/// Zero when either norm is zero.
EmbeddingVector cosine_gradient(const EmbeddingVector& s, const EmbeddingVector& a);

EmbeddingVector clip_vec(const EmbeddingVector& g, double lo, double hi);

/// Component-wise projection onto the L-infinity ball around `center`.
EmbeddingVector project_linf(const EmbeddingVector& s, const EmbeddingVector& center, double radius);

/// s + k * g
EmbeddingVector axpy(const EmbeddingVector& s, double k, const EmbeddingVector& g);

EmbeddingVector scaled(const EmbeddingVector& v, double k);

double linf_distance(const EmbeddingVector& u, const EmbeddingVector& v);

}  // namespace empra
