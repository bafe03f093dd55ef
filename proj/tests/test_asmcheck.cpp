#include "microfor/asmcheck.hpp"
#include "microfor/parser.hpp"
#include "microfor/render.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace microfor;
using namespace microfor::asmcheck;

namespace {

std::string fixture(const std::string& name) {
  std::ifstream in(std::string(MICROFOR_FIXTURES) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string loop_line(const std::string& source) {
  std::istringstream in(source);
  for (std::string line; std::getline(in, line);) {
    if (line.find("for (") != std::string::npos) return line;
  }
  return {};
}

}  // namespace

TEST_CASE("published listings") {
  CHECK(count_jumps(fixture("listing_traditional.s"), ".LFB0") == JumpCount{1, 1});
  CHECK(count_jumps(fixture("listing_micro.s"), ".LFB0") == JumpCount{0, 1});
}

TEST_CASE("mnemonic classification") {
  const std::string text =
      "f:\n"
      "  jmp .L1\n"
      ".L1: jne .L2   # comment jmp\n"
      "  jmpq *%rax\n"
      "  movl $1, %eax\n"
      "  jge .L1\n"
      "  ret\n"
      "  jmp .L9\n";
  CHECK(count_jumps(text, "f") == JumpCount{2, 2});
  CHECK(count_jumps("g:\n  movl $0, %eax\n  ret\n", "g") == JumpCount{0, 0});
  CHECK(count_jumps("_g:\n  jz .L1\n", "g") == JumpCount{0, 1});
  CHECK_THROWS_AS(count_jumps("h:\n  ret\n", "f"), FunctionNotFound);
  CHECK_THROWS_AS(count_jumps("", "f"), FunctionNotFound);
}

TEST_CASE("emitted kernels") {
  const std::string traditional = emit_kernel({Variant::Traditional, "k", "n"});
  const std::string micro = emit_kernel({Variant::Micro, "k", "n"});
  CHECK(traditional.find("for (i = 0; i < n; i++)") != std::string::npos);
  CHECK(micro.find("for (i = 0; i++ < n;)") != std::string::npos);
  CHECK(traditional.find("#include") == std::string::npos);
  CHECK(emit_kernel({Variant::Micro, "k", "n"}) == micro);

  // The loop statement parses and renders back to itself.
  for (const auto& source : {traditional, micro}) {
    const std::string line = loop_line(source);
    const std::string stmt = line.substr(line.find("for"));
    CHECK(render(parse_program(stmt)) == stmt);
  }
}

TEST_CASE("live compiler check") {
  const auto compiler = find_compiler();
  if (!compiler || !host_is_x86_64()) {
    MESSAGE("skipped: needs a C compiler on an x86-64 host");
    return;
  }
  const KernelSpec trad{Variant::Traditional, "trad_kernel", "n"};
  const KernelSpec micro{Variant::Micro, "micro_kernel", "n"};
  const auto a = count_jumps(compile_to_asm(*compiler, emit_kernel(trad)), trad.function_name);
  const auto b = count_jumps(compile_to_asm(*compiler, emit_kernel(micro)), micro.function_name);
  MESSAGE("traditional " << a.unconditional << "/" << a.conditional << ", micro " << b.unconditional
                         << "/" << b.conditional << " with " << compiler->version);
  CHECK(a.total() > b.total());

  const auto empty = compile_to_asm(*compiler, "void nothing(void) {}\n");
  CHECK(count_jumps(empty, "nothing") == JumpCount{0, 0});
  CHECK_THROWS_AS(compile_to_asm(*compiler, "this is not C"), CompileFailed);
}
