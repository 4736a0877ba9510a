// Copyright 2026 the ptflow authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <string>

// Arithmetic inner loops of the classifier. Scalar versions are the
// reference; float has an AVX2 variant selected once at startup by CPU
// probing (override with force_isa or PTFLOW_KERNELS=scalar|avx2). The two
// float paths are equivalence-tested against each other; double always runs
// the scalar reference, which keeps the finite-difference gradient checks on
// the reference path.

namespace ptflow::kernels {

enum class Isa { kScalar, kAvx2 };

Isa active_isa();
const char* isa_name(Isa isa);

/// True if the CPU supports the AVX2+FMA path.
bool avx2_available();

/// Pin the float kernel implementation. Throws ptflow::ConfigError when the
/// requested ISA is unsupported on this CPU.
void force_isa(Isa isa);

namespace scalar {
float dot_f32(const float* a, const float* b, size_t n);
void axpy_f32(float alpha, const float* x, float* y, size_t n);
void relu_f32(float* x, size_t n);
void relu_backward_f32(float* grad, const float* activation, size_t n);
}  // namespace scalar

namespace avx2 {
// Defined only when the build targets x86-64; callers must check
// avx2_available() first.
float dot_f32(const float* a, const float* b, size_t n);
void axpy_f32(float alpha, const float* x, float* y, size_t n);
void relu_f32(float* x, size_t n);
void relu_backward_f32(float* grad, const float* activation, size_t n);
}  // namespace avx2

// Dispatched float entry points.
float dot(const float* a, const float* b, size_t n);
void axpy(float alpha, const float* x, float* y, size_t n);
void relu(float* x, size_t n);
void relu_backward(float* grad, const float* activation, size_t n);

// Double runs the scalar reference unconditionally.
inline double dot(const double* a, const double* b, size_t n) {
  double acc = 0.0;
  for (size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

inline void axpy(double alpha, const double* x, double* y, size_t n) {
  for (size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

inline void relu(double* x, size_t n) {
  for (size_t i = 0; i < n; ++i)
    if (x[i] < 0.0) x[i] = 0.0;
}

inline void relu_backward(double* grad, const double* activation, size_t n) {
  for (size_t i = 0; i < n; ++i)
    if (activation[i] <= 0.0) grad[i] = 0.0;
}

}  // namespace ptflow::kernels
