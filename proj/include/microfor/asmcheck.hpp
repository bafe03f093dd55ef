#pragma once

// Jump counting over compiler assembly for the two loop forms. Only the
// x86-64 AT&T mnemonic table is known.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace microfor::asmcheck {

enum class Variant { Traditional, Micro };

struct KernelSpec {
  Variant variant = Variant::Traditional;
  std::string function_name = "loop_kernel";
  std::string bound_name = "n";
};

struct JumpCount {
  int unconditional = 0;
  int conditional = 0;
  int total() const { return unconditional + conditional; }
  bool operator==(const JumpCount&) const = default;
};

class FunctionNotFound : public std::runtime_error {
 public:
  explicit FunctionNotFound(const std::string& name)
      : std::runtime_error("function label '" + name + "' not found in assembly") {}
};

class CompilerNotFound : public std::runtime_error {
 public:
  CompilerNotFound() : std::runtime_error("no C compiler found (set MICROFOR_CC or CC)") {}
};

class CompileFailed : public std::runtime_error {
 public:
  explicit CompileFailed(const std::string& diagnostics)
      : std::runtime_error("compilation failed:\n" + diagnostics) {}
};

/// Standalone C source: one function taking the bound and looping over it
/// with an empty body. The loop header is on its own line.
std::string emit_kernel(const KernelSpec& spec);

/// Counts jump mnemonics from `function:` up to the function's return or
/// end marker (`ret`, `.cfi_endproc`, `.size`, `.LFE<n>:`).
JumpCount count_jumps(std::string_view assembly, const std::string& function_name);

struct Compiler {
  std::string path;
  std::string version;  // first line of `--version`
};

/// MICROFOR_CC, then CC, then cc/gcc/clang on PATH.
std::optional<Compiler> find_compiler();

/// Compiles C source to assembly text with `-S -O<level>`. Artifacts go to
/// a fresh temporary directory, removed unless `keep_dir` is given.
std::string compile_to_asm(const Compiler& compiler, const std::string& source,
                           int optimization = 0,
                           const std::optional<std::filesystem::path>& keep_dir = std::nullopt);

bool host_is_x86_64();

}  // namespace microfor::asmcheck
