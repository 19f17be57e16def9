#pragma once

#include <cstddef>

namespace jll {

// Batched cos/sincos for pre-reduced arguments (|arg| <= ~1e4). Plain loops
// written to auto-vectorize; accuracy ~1 ulp over the supported range.
void cos_many(const double* arg, double* out, std::size_t n);
void sincos_many(const double* arg, double* s, double* c, std::size_t n);

}  // namespace jll
