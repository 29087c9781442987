// Copyright 2026 The EMPRA Authors
// SPDX-License-Identifier: Apache-2.0

#include "empra/vecmath.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "empra/errors.hpp"

namespace empra {

namespace {

void require_same_dim(const EmbeddingVector& u, const EmbeddingVector& v, const char* op) {
    if (u.dim() != v.dim()) {
        throw ContractError(std::string(op) + ": dimension mismatch (" + std::to_string(u.dim()) + " vs " +
                            std::to_string(v.dim()) + ")");
    }
}

}  // namespace

EmbeddingVector::EmbeddingVector(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw ContractError("embedding dimension must be positive");
    for (double x : values_) {
        if (!std::isfinite(x)) throw ContractError("embedding component is not finite");
    }
}

EmbeddingVector EmbeddingVector::zeros(std::size_t dim) {
    return EmbeddingVector(std::vector<double>(dim, 0.0));
}

double EmbeddingVector::norm() const {
    double sum = 0.0;
    for (double x : values_) sum += x * x;
    return std::sqrt(sum);
}

bool EmbeddingVector::is_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](double x) { return x == 0.0; });
}

double dot(const EmbeddingVector& u, const EmbeddingVector& v) {
    require_same_dim(u, v, "dot");
    double sum = 0.0;
    for (std::size_t i = 0; i < u.dim(); ++i) sum += u[i] * v[i];
    return sum;
}

double cosine(const EmbeddingVector& u, const EmbeddingVector& v) {
    require_same_dim(u, v, "cosine");
    const double nu = u.norm();
    const double nv = v.norm();
    if (nu == 0.0 || nv == 0.0) return 0.0;
    return std::clamp(dot(u, v) / (nu * nv), -1.0, 1.0);
}

EmbeddingVector cosine_gradient(const EmbeddingVector& s, const EmbeddingVector& a) {
    require_same_dim(s, a, "cosine_gradient");
    const double ns = s.norm();
    const double na = a.norm();
    if (ns == 0.0 || na == 0.0) return EmbeddingVector::zeros(s.dim());
    const double cos = dot(s, a) / (ns * na);
    std::vector<double> g(s.dim());
    for (std::size_t i = 0; i < g.size(); ++i) {
        g[i] = a[i] / (ns * na) - cos * s[i] / (ns * ns);
    }
    return EmbeddingVector(std::move(g));
}

EmbeddingVector clip_vec(const EmbeddingVector& g, double lo, double hi) {
    if (lo > hi) throw ContractError("clip_vec: lower bound exceeds upper bound");
    std::vector<double> out(g.values().begin(), g.values().end());
    for (double& x : out) x = std::min(hi, std::max(lo, x));
    return EmbeddingVector(std::move(out));
}

EmbeddingVector project_linf(const EmbeddingVector& s, const EmbeddingVector& center, double radius) {
    require_same_dim(s, center, "project_linf");
    if (!(radius >= 0.0)) throw ContractError("project_linf: radius must be non-negative");
    std::vector<double> out(s.dim());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double c = center[i];
        if (std::abs(s[i] - c) <= radius) {
            out[i] = s[i];
            continue;
        }
        double x = s[i] > c ? c + radius : c - radius;
        // c + delta can round past the boundary; step back so |x - c| <= radius holds in floating point.
        while (std::abs(x - c) > radius) x = std::nextafter(x, c);
        out[i] = x;
    }
    return EmbeddingVector(std::move(out));
}

EmbeddingVector axpy(const EmbeddingVector& s, double k, const EmbeddingVector& g) {
    require_same_dim(s, g, "axpy");
    std::vector<double> out(s.dim());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = s[i] + k * g[i];
    return EmbeddingVector(std::move(out));
}

EmbeddingVector scaled(const EmbeddingVector& v, double k) {
    std::vector<double> out(v.values().begin(), v.values().end());
    for (double& x : out) x *= k;
    return EmbeddingVector(std::move(out));
}

double linf_distance(const EmbeddingVector& u, const EmbeddingVector& v) {
    require_same_dim(u, v, "linf_distance");
    double m = 0.0;
    for (std::size_t i = 0; i < u.dim(); ++i) m = std::max(m, std::abs(u[i] - v[i]));
    return m;
}

}  // namespace empra
