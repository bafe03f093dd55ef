#pragma once

#include <cstdint>

// Loop kernels under measurement. They live in their own translation unit,
// built with optimization on, and are never inlined into the harness.
namespace microfor::bench::kernels {

std::uint64_t traditional_accumulate(std::uint64_t n);
std::uint64_t micro_accumulate(std::uint64_t n);
std::uint64_t traditional_empty(std::uint64_t n);
std::uint64_t micro_empty(std::uint64_t n);

}  // namespace microfor::bench::kernels
