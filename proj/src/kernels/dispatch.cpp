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

#include <cstdlib>
#include <cstring>

#include "ptflow/errors.hpp"
#include "ptflow/kernels.hpp"

namespace ptflow::kernels {

namespace {

struct FloatOps {
  float (*dot)(const float*, const float*, size_t);
  void (*axpy)(float, const float*, float*, size_t);
  void (*relu)(float*, size_t);
  void (*relu_backward)(float*, const float*, size_t);
};

constexpr FloatOps kScalarOps = {scalar::dot_f32, scalar::axpy_f32,
                                 scalar::relu_f32, scalar::relu_backward_f32};

#if defined(__x86_64__) || defined(_M_X64)
constexpr FloatOps kAvx2Ops = {avx2::dot_f32, avx2::axpy_f32, avx2::relu_f32,
                               avx2::relu_backward_f32};
#endif

bool detect_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

struct Dispatch {
  Isa isa;
  FloatOps ops;

  Dispatch() {
    isa = detect_avx2() ? Isa::kAvx2 : Isa::kScalar;
    if (const char* env = std::getenv("PTFLOW_KERNELS")) {
      if (std::strcmp(env, "scalar") == 0) isa = Isa::kScalar;
      if (std::strcmp(env, "avx2") == 0 && detect_avx2()) isa = Isa::kAvx2;
    }
    apply();
  }

  void apply() {
#if defined(__x86_64__) || defined(_M_X64)
    ops = (isa == Isa::kAvx2) ? kAvx2Ops : kScalarOps;
#else
    ops = kScalarOps;
#endif
  }
};

Dispatch& dispatch() {
  static Dispatch d;
  return d;
}

}  // namespace

Isa active_isa() { return dispatch().isa; }

const char* isa_name(Isa isa) {
  return isa == Isa::kAvx2 ? "avx2" : "scalar";
}

bool avx2_available() { return detect_avx2(); }

void force_isa(Isa isa) {
  if (isa == Isa::kAvx2 && !detect_avx2())
    throw ConfigError("avx2 kernels requested but the CPU lacks AVX2/FMA");
  dispatch().isa = isa;
  dispatch().apply();
}

float dot(const float* a, const float* b, size_t n) {
  return dispatch().ops.dot(a, b, n);
}

void axpy(float alpha, const float* x, float* y, size_t n) {
  dispatch().ops.axpy(alpha, x, y, n);
}

void relu(float* x, size_t n) { dispatch().ops.relu(x, n); }

void relu_backward(float* grad, const float* activation, size_t n) {
  dispatch().ops.relu_backward(grad, activation, n);
}

#if !(defined(__x86_64__) || defined(_M_X64))
// Satisfy the declarations on non-x86 targets; never reached because
// force_isa rejects kAvx2 when detect_avx2() is false.
namespace avx2 {
float dot_f32(const float* a, const float* b, size_t n) {
  return scalar::dot_f32(a, b, n);
}
void axpy_f32(float alpha, const float* x, float* y, size_t n) {
  scalar::axpy_f32(alpha, x, y, n);
}
void relu_f32(float* x, size_t n) { scalar::relu_f32(x, n); }
void relu_backward_f32(float* grad, const float* activation, size_t n) {
  scalar::relu_backward_f32(grad, activation, n);
}
}  // namespace avx2
#endif

}  // namespace ptflow::kernels
