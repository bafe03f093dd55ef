#include "kernels.hpp"

namespace microfor::bench::kernels {
namespace {

// Forces `value` into a register each iteration so the loop survives the
// optimizer without adding a memory access.
inline void keep(std::uint64_t& value) { asm volatile("" : "+r"(value)); }

}  // namespace

[[gnu::noinline]] std::uint64_t traditional_accumulate(std::uint64_t n) {
  std::uint64_t acc = 0;
  std::uint64_t i;
  for (i = 0; i < n; i++) {
    acc += i;
    keep(acc);
  }
  return acc;
}

[[gnu::noinline]] std::uint64_t micro_accumulate(std::uint64_t n) {
  std::uint64_t acc = 0;
  std::uint64_t i;
  for (i = 0; i++ < n;) {
    acc += i;
    keep(acc);
  }
  return acc;
}

[[gnu::noinline]] std::uint64_t traditional_empty(std::uint64_t n) {
  std::uint64_t i;
  for (i = 0; i < n; i++) {
  }
  return i;
}

[[gnu::noinline]] std::uint64_t micro_empty(std::uint64_t n) {
  std::uint64_t i;
  for (i = 0; i++ < n;) {
  }
  return i;
}

}  // namespace microfor::bench::kernels
