#include "microfor/asmcheck.hpp"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include <sys/utsname.h>
#include <unistd.h>

namespace microfor::asmcheck {
namespace {

const std::set<std::string, std::less<>> kUnconditional = {"jmp", "jmpq", "jmpl", "ljmp"};

const std::set<std::string, std::less<>> kConditional = {
    "ja",  "jae", "jb",  "jbe", "jc",   "jcxz", "jecxz", "jrcxz", "je",  "jg",  "jge", "jl",
    "jle", "jna", "jnae", "jnb", "jnbe", "jnc", "jne",   "jng",   "jnge", "jnl", "jnle", "jno",
    "jnp", "jns", "jnz", "jo",  "jp",   "jpe", "jpo",   "js",    "jz"};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto end = nl == std::string_view::npos ? text.size() : nl;
    out.push_back(text.substr(pos, end - pos));
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return out;
}

// First instruction token on a line, skipping a leading `label:`.
std::string_view mnemonic(std::string_view line) {
  line = trim(line.substr(0, line.find('#')));
  while (!line.empty()) {
    const auto ws = line.find_first_of(" \t");
    const auto token = line.substr(0, ws);
    if (token.back() != ':') return token;
    if (ws == std::string_view::npos) return {};
    line = trim(line.substr(ws));
  }
  return {};
}

bool is_end_marker(std::string_view line) {
  const auto t = trim(line);
  if (t.starts_with(".cfi_endproc") || t.starts_with(".size")) return true;
  if (t.starts_with(".LFE") && t.ends_with(":")) return true;
  const auto m = mnemonic(line);
  return m == "ret" || m == "retq" || m == "retl";
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (const char c : s) {
    if (c == '\'') out += "'\\''";
    else out += c;
  }
  return out + "'";
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::optional<std::string> resolve(const std::string& name) {
  if (name.empty()) return std::nullopt;
  if (name.find('/') != std::string::npos) {
    if (::access(name.c_str(), X_OK) == 0) return name;
    return std::nullopt;
  }
  const char* path = std::getenv("PATH");
  if (path == nullptr) return std::nullopt;
  std::stringstream dirs(path);
  std::string dir;
  while (std::getline(dirs, dir, ':')) {
    if (dir.empty()) continue;
    const auto candidate = std::filesystem::path(dir) / name;
    if (::access(candidate.c_str(), X_OK) == 0) return candidate.string();
  }
  return std::nullopt;
}

std::string first_line_of_version(const std::string& path) {
  const std::string cmd = shell_quote(path) + " --version 2>&1";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) return {};
  std::array<char, 256> buf{};
  std::string line;
  if (std::fgets(buf.data(), static_cast<int>(buf.size()), pipe) != nullptr) line = buf.data();
  ::pclose(pipe);
  while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.pop_back();
  return line;
}

}  // namespace

std::string emit_kernel(const KernelSpec& spec) {
  const std::string& n = spec.bound_name;
  const std::string header = spec.variant == Variant::Traditional
                                 ? "for (i = 0; i < " + n + "; i++) { }"
                                 : "for (i = 0; i++ < " + n + ";) { }";
  return "int " + spec.function_name + "(int " + n + ")\n" +
         "{\n"
         "  int i;\n"
         "  " + header + "\n" +
         "  return i;\n"
         "}\n";
}

JumpCount count_jumps(std::string_view assembly, const std::string& function_name) {
  const auto lines = lines_of(assembly);
  const std::string label = function_name + ":";
  const std::string underscored = "_" + label;
  std::optional<std::size_t> start;
  for (std::size_t i = 0; i < lines.size() && !start; ++i) {
    const auto t = trim(lines[i]);
    if (t == label || t == underscored) start = i + 1;
  }
  if (!start) throw FunctionNotFound(function_name);

  JumpCount count;
  for (std::size_t i = *start; i < lines.size(); ++i) {
    if (is_end_marker(lines[i])) break;
    const auto m = mnemonic(lines[i]);
    if (m.empty() || m[0] != 'j') continue;
    if (kUnconditional.contains(m)) ++count.unconditional;
    else if (kConditional.contains(m)) ++count.conditional;
  }
  return count;
}

std::optional<Compiler> find_compiler() {
  std::vector<std::string> candidates;
  for (const char* var : {"MICROFOR_CC", "CC"}) {
    if (const char* value = std::getenv(var); value != nullptr && *value != '\0') {
      candidates.emplace_back(value);
    }
  }
  for (const char* name : {"cc", "gcc", "clang"}) candidates.emplace_back(name);
  for (const auto& candidate : candidates) {
    if (auto path = resolve(candidate)) return Compiler{*path, first_line_of_version(*path)};
  }
  return std::nullopt;
}

std::string compile_to_asm(const Compiler& compiler, const std::string& source, int optimization,
                           const std::optional<std::filesystem::path>& keep_dir) {
  namespace fs = std::filesystem;
  fs::path dir;
  if (keep_dir) {
    dir = *keep_dir;
    fs::create_directories(dir);
  } else {
    std::string pattern = (fs::temp_directory_path() / "microfor-asm-XXXXXX").string();
    if (::mkdtemp(pattern.data()) == nullptr) throw std::runtime_error("cannot create temp directory");
    dir = pattern;
  }

  const fs::path src = dir / "kernel.c";
  const fs::path out = dir / "kernel.s";
  const fs::path diag = dir / "diagnostics.txt";
  {
    std::ofstream file(src);
    file << source;
  }
  const std::string cmd = shell_quote(compiler.path) + " -S -O" + std::to_string(optimization) +
                          " -fno-asynchronous-unwind-tables -o " + shell_quote(out.string()) + " " +
                          shell_quote(src.string()) + " 2> " + shell_quote(diag.string());
  const int status = std::system(cmd.c_str());
  std::string result = status == 0 ? read_file(out) : std::string();
  const std::string diagnostics = status == 0 ? std::string() : read_file(diag);
  if (!keep_dir) {
    std::error_code ignored;
    fs::remove_all(dir, ignored);
  }
  if (status != 0) throw CompileFailed(diagnostics);
  return result;
}

bool host_is_x86_64() {
  utsname info{};
  if (::uname(&info) != 0) return false;
  const std::string machine = info.machine;
  return machine == "x86_64" || machine == "amd64";
}

}  // namespace microfor::asmcheck
