#include "microfor/cli.hpp"

#include "microfor/asmcheck.hpp"
#include "microfor/bench.hpp"
#include "microfor/cost_model.hpp"
#include "microfor/parser.hpp"
#include "microfor/render.hpp"
#include "microfor/report.hpp"
#include "microfor/semantics.hpp"
#include "microfor/stats.hpp"
#include "microfor/transform.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace microfor::cli {
namespace {

using nlohmann::json;

constexpr const char* kGrammar =
    "usage: microfor <parse|analyze|transform|interpret|predict|bench|stats|asm-verify|report> "
    "[flags]\n"
    "  parse <file> [--emit-ast] [--json]\n"
    "  analyze <file> [--json]\n"
    "  transform <file> [-o <out>] [--compensate] [--post-fixup] [--json]\n"
    "  interpret <file> [--set name=value]... [--induction <var>] [--fuel <count>] [--json]\n"
    "  predict (--n <count> | --table-4) [--model <json>] [--clock-hz <hz>] [--json]\n"
    "  bench --n <count>[,<count>...] [--reps <k>] [--warmup <k>] [--body accumulator|empty] "
    "[--csv <out>] [--json]\n"
    "  stats (--input <column.csv> | --replay <table.csv>) [--json]\n"
    "  asm-verify [--keep-artifacts] [--json]\n"
    "  report --out <dir> (--replay <table.csv> | --live [--n <count>,...]) [--model <json>] "
    "[--json]\n"
    "global: --config <json> pins the cost model and bench defaults\n";

// Bad input from the caller: exit code 2.
class UserError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Settings {
  std::optional<cost::CostModel> model;
  bench::BenchConfig bench;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UserError("cannot open file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UserError("cannot write file: " + path);
  out << text;
}

json read_json(const std::string& path) {
  try {
    return json::parse(read_text(path));
  } catch (const json::exception& e) {
    throw UserError(path + ": " + e.what());
  }
}

Settings load_settings(const std::string& config_path) {
  Settings s;
  if (config_path.empty()) return s;
  const json cfg = read_json(config_path);
  try {
    if (cfg.contains("cost_model")) s.model = cost::model_from_json(cfg.at("cost_model"));
    if (cfg.contains("bench")) {
      const json& b = cfg.at("bench");
      s.bench.reps = b.value("reps", s.bench.reps);
      s.bench.warmup = b.value("warmup", s.bench.warmup);
      if (b.contains("body")) s.bench.body = bench::body_from_string(b.at("body").get<std::string>());
    }
  } catch (const json::exception& e) {
    throw UserError(config_path + ": " + e.what());
  }
  return s;
}

// Accepts integers and scientific notation such as 1e8.
double parse_count(const std::string& text) {
  std::size_t used = 0;
  double value = 0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || used == 0 || !(value >= 0) || std::floor(value) != value ||
      value > 1.8e19) {
    throw UserError("'" + text + "' is not a non-negative integer count");
  }
  return value;
}

cost::CostModel resolve_model(const std::string& model_path, const Settings& settings) {
  if (!model_path.empty()) {
    try {
      return cost::model_from_json(read_json(model_path));
    } catch (const json::exception& e) {
      throw UserError(model_path + ": " + e.what());
    }
  }
  if (settings.model) return *settings.model;
  const auto rows = cost::published_table();
  return cost::fit_from_table(rows);
}

std::vector<double> published_n_values() {
  std::vector<double> ns;
  for (const auto& r : cost::published_table()) ns.push_back(r.n);
  return ns;
}

const ast::ForLoop* as_loop(const ast::Stmt& s) { return std::get_if<ast::ForLoop>(&s.node); }

std::optional<std::string> init_target(const ast::ForLoop& loop) {
  if (!loop.init) return std::nullopt;
  if (const auto* a = std::get_if<ast::Assign>(&loop.init->node)) return a->target;
  return std::nullopt;
}

// `v = e` with e not mentioning v: the old value is dead from here on.
bool overwrites(const ast::Expr& e, const std::string& v) {
  const auto* a = std::get_if<ast::Assign>(&e.node);
  return a != nullptr && a->target == v && !reads_variable(*a->value, v);
}

bool later_reads(const ast::Program& program, std::size_t index, const std::string& v) {
  for (std::size_t j = index + 1; j < program.size(); ++j) {
    const ast::Stmt& s = program[j];
    if (const auto* e = std::get_if<ast::ExprStmt>(&s.node); e && overwrites(e->expr, v)) return false;
    if (const auto* l = as_loop(s); l && l->init && overwrites(*l->init, v)) return false;
    if (reads_variable(s, v)) return true;
  }
  return false;
}

Classification classify_in_context(const ast::Program& program, std::size_t index) {
  const ast::ForLoop& loop = *as_loop(program[index]);
  const auto v = init_target(loop);
  return classify(loop, v && later_reads(program, index, *v));
}

// ---- subcommand options -------------------------------------------------

struct Options {
  std::string config;
  bool json = false;

  std::string file;
  bool emit_ast = false;

  std::string output;
  bool compensate = false;
  bool post_fixup = false;

  std::vector<std::string> bindings;
  std::string induction;
  std::uint64_t fuel = kDefaultFuel;

  std::vector<std::string> n_values;
  std::string model;
  bool table4 = false;
  double clock_hz = 0;

  int reps = 0;
  int warmup = 0;
  std::string body;
  std::string csv;

  std::string input;
  std::string replay;

  bool keep_artifacts = false;

  std::string out_dir;
  bool live = false;
};

// ---- handlers -----------------------------------------------------------

int cmd_parse(const Options& o, std::ostream& out) {
  const ast::Program program = parse_program(read_text(o.file));
  if (o.json) {
    out << json{{"canonical", render(program)}, {"ast", to_json(program)}}.dump(2) << "\n";
  } else if (o.emit_ast) {
    out << to_json(program).dump(2) << "\n";
  } else {
    out << render(program) << "\n";
  }
  return kSuccess;
}

int cmd_analyze(const Options& o, std::ostream& out) {
  const ast::Program program = parse_program(read_text(o.file));
  json results = json::array();
  for (std::size_t i = 0; i < program.size(); ++i) {
    if (as_loop(program[i]) == nullptr) continue;
    const Classification c = classify_in_context(program, i);
    if (o.json) {
      json entry = to_json(c);
      entry["statement"] = i;
      entry["loop"] = render_stmt(program[i]);
      results.push_back(entry);
    } else {
      out << "statement " << i << ": " << to_string(c.verdict) << " (" << c.reason << ")\n"
          << "  " << render_stmt(program[i]) << "\n";
    }
  }
  if (o.json) out << results.dump(2) << "\n";
  else if (std::none_of(program.begin(), program.end(), [](const auto& s) { return as_loop(s); })) {
    out << "no for loops found\n";
  }
  return kSuccess;
}

int cmd_transform(const Options& o, std::ostream& out, std::ostream& err) {
  const ast::Program program = parse_program(read_text(o.file));
  const TransformOptions opts{o.compensate, o.post_fixup};
  ast::Program result;
  json classifications = json::array();
  for (std::size_t i = 0; i < program.size(); ++i) {
    const ast::ForLoop* loop = as_loop(program[i]);
    if (loop == nullptr) {
      result.push_back(program[i]);
      continue;
    }
    const Classification c = classify_in_context(program, i);
    classifications.push_back(to_json(c));
    try {
      if (c.verdict == Verdict::InductionReadAfterLoop && !o.post_fixup) throw NotTransformable(c);
      MicroRewrite rewrite = to_micro(*loop, opts);
      result.push_back(ast::Stmt{std::move(rewrite.loop)});
      if (rewrite.fixup) result.push_back(std::move(*rewrite.fixup));
    } catch (const NotTransformable& e) {
      err << "statement " << i << ": " << e.what() << "\n";
      if (c.verdict == Verdict::CompensableBodyUse) err << "hint: pass --compensate\n";
      if (c.verdict == Verdict::InductionReadAfterLoop) err << "hint: pass --post-fixup\n";
      return kUserError;
    } catch (const BodyWritesInduction& e) {
      err << "statement " << i << ": " << e.what() << "\n";
      return kUserError;
    }
  }
  const std::string text = render(result) + "\n";
  if (!o.output.empty()) write_text(o.output, text);
  if (o.json) {
    out << json{{"source", text}, {"loops", classifications}}.dump(2) << "\n";
  } else if (o.output.empty()) {
    out << text;
  }
  return kSuccess;
}

int cmd_interpret(const Options& o, std::ostream& out) {
  const ast::Program program = parse_program(read_text(o.file));
  Env env;
  for (const auto& binding : o.bindings) {
    const auto eq = binding.find('=');
    if (eq == std::string::npos || eq == 0) throw UserError("--set expects name=value, got '" + binding + "'");
    const std::string value = binding.substr(eq + 1);
    try {
      env[binding.substr(0, eq)] = BigInt(value);
    } catch (const std::exception&) {
      throw UserError("--set " + binding + ": value is not an integer");
    }
  }
  const auto first = std::find_if(program.begin(), program.end(), [](const auto& s) { return as_loop(s); });
  if (first == program.end()) throw UserError("no top-level for loop to interpret");
  const ast::ForLoop& loop = *as_loop(*first);
  std::string induction = o.induction;
  if (induction.empty()) {
    const auto v = init_target(loop);
    if (!v) throw UserError("cannot infer the induction variable; pass --induction");
    induction = *v;
  }
  try {
    env = execute_program(ast::Program(program.begin(), first), std::move(env), o.fuel);
    out << to_json(run_loop(loop, std::move(env), induction, o.fuel)).dump() << "\n";
  } catch (const UnboundVariable& e) {
    throw UserError(std::string(e.what()) + "; bind it with --set");
  } catch (const FuelExhausted& e) {
    throw UserError(e.what());
  }
  return kSuccess;
}

int cmd_predict(const Options& o, const Settings& settings, std::ostream& out) {
  if (o.table4 == !o.n_values.empty()) throw UserError("predict needs exactly one of --n or --table-4");
  const cost::CostModel model = resolve_model(o.model, settings);
  std::vector<double> ns;
  if (o.table4) ns = published_n_values();
  for (const auto& text : o.n_values) ns.push_back(parse_count(text));

  if (o.json) {
    json j{{"model", cost::to_json(model)},
           {"theoretical_efficiency_pct", cost::theoretical_efficiency(model)},
           {"predictions", json::array()}};
    for (const double n : ns) j["predictions"].push_back(cost::to_json(cost::predict(model, n)));
    if (o.clock_hz > 0) {
      const auto d = cost::cycle_decomposition(model, o.clock_hz);
      j["cycles"] = {{"clock_hz", o.clock_hz},
                     {"traditional", d.cycles_traditional},
                     {"micro", d.cycles_micro},
                     {"gap", d.gap},
                     {"gap_within_jmp_range", d.gap_within_jmp_range},
                     {"jmp_average", d.jmp_average}};
    }
    out << j.dump(2) << "\n";
    return kSuccess;
  }
  out << cost::table_csv(model, ns);
  if (o.clock_hz > 0) {
    const auto d = cost::cycle_decomposition(model, o.clock_hz);
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "# cycles per iteration at %.6g Hz: traditional %.3f, micro %.3f, gap %.3f (%s "
                  "jmp range, average %.1f)\n",
                  o.clock_hz, d.cycles_traditional, d.cycles_micro, d.gap,
                  d.gap_within_jmp_range ? "within" : "outside", d.jmp_average);
    out << buf;
  }
  return kSuccess;
}

bench::BenchConfig bench_config(const Options& o, const Settings& settings) {
  bench::BenchConfig config = settings.bench;
  if (o.reps != 0) config.reps = o.reps;
  if (o.warmup != 0) config.warmup = o.warmup;
  if (!o.body.empty()) {
    try {
      config.body = bench::body_from_string(o.body);
    } catch (const std::invalid_argument& e) {
      throw UserError(e.what());
    }
  }
  if (config.reps < 3) throw UserError("--reps must be at least 3");
  if (config.warmup < 1) throw UserError("--warmup must be at least 1");
  return config;
}

std::vector<std::uint64_t> bench_n_values(const std::vector<std::string>& texts) {
  std::vector<std::uint64_t> ns;
  for (const auto& t : texts) {
    const double n = parse_count(t);
    if (n < 1) throw UserError("bench needs n >= 1");
    ns.push_back(static_cast<std::uint64_t>(n));
  }
  return ns;
}

json sweep_json(const bench::SweepResult& r) {
  json rows = json::array();
  for (const auto& row : r.rows) rows.push_back(stats::to_json(row));
  json j{{"rows", rows}};
  if (r.summary) j["summary"] = stats::to_json(*r.summary);
  else j["summary_note"] = r.summary_note;
  return j;
}

int cmd_bench(const Options& o, const Settings& settings, std::ostream& out, std::ostream& err) {
  if (o.n_values.empty()) throw UserError("bench needs --n");
  const auto config = bench_config(o, settings);
  const auto ns = bench_n_values(o.n_values);
  const bench::SweepResult result = bench::sweep(ns, config);

  const std::string csv = stats::rows_csv(result.rows);
  if (!o.csv.empty()) write_text(o.csv, csv);
  for (const auto& row : result.rows) {
    if (row.error) err << "n=" << static_cast<std::uint64_t>(row.n) << ": " << *row.error << "\n";
  }
  if (o.json) {
    out << sweep_json(result).dump(2) << "\n";
  } else {
    out << csv;
    if (result.summary) out << "\n" << stats::summary_text(*result.summary);
    else out << "\nsummary: " << result.summary_note << "\n";
  }
  const bool any_ok = std::any_of(result.rows.begin(), result.rows.end(), [](const auto& r) { return !r.error; });
  return any_ok ? kSuccess : kInternalError;
}

int cmd_stats(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.input.empty() == o.replay.empty()) throw UserError("stats needs exactly one of --input or --replay");
  try {
    if (!o.input.empty()) {
      const auto values = stats::read_column(read_text(o.input));
      const auto summary = stats::summarize(values);
      if (o.json) out << stats::to_json(summary).dump(2) << "\n";
      else out << stats::summary_text(summary);
      return kSuccess;
    }
    const stats::Replay r = stats::replay(read_text(o.replay));
    for (const auto idx : r.mismatches) {
      err << "row " << idx << ": recomputed efficiency " << r.rows[idx].efficiency_pct
          << " differs from recorded " << r.recorded[idx] << "\n";
    }
    if (o.json) {
      json rows = json::array();
      for (const auto& row : r.rows) rows.push_back(stats::to_json(row));
      out << json{{"rows", rows}, {"summary", stats::to_json(r.summary)}, {"mismatches", r.mismatches}}.dump(2)
          << "\n";
    } else {
      out << stats::rows_csv(r.rows) << "\n" << stats::summary_text(r.summary);
    }
    return r.mismatches.empty() ? kSuccess : kUserError;
  } catch (const std::invalid_argument& e) {
    throw UserError(e.what());
  }
}

int cmd_asm_verify(const Options& o, std::ostream& out) {
  using namespace asmcheck;
  json j;
  auto finish = [&](const std::string& verdict, const std::string& detail, int code) {
    if (o.json) {
      j["verdict"] = verdict;
      j["detail"] = detail;
      out << j.dump(2) << "\n";
    } else {
      out << "verdict: " << verdict << " (" << detail << ")\n";
    }
    return code;
  };

  if (!host_is_x86_64()) return finish("skip", "host is not x86-64", kSkipped);
  const auto compiler = find_compiler();
  if (!compiler) return finish("skip", "no C compiler found", kSkipped);
  j["compiler"] = {{"path", compiler->path}, {"version", compiler->version}};
  if (!o.json) out << "compiler: " << compiler->path << " (" << compiler->version << ")\n";

  JumpCount counts[2];
  const Variant variants[2] = {Variant::Traditional, Variant::Micro};
  const char* names[2] = {"traditional", "micro"};
  for (int k = 0; k < 2; ++k) {
    const KernelSpec spec{variants[k], std::string(names[k]) + "_kernel", "n"};
    std::optional<std::filesystem::path> keep;
    if (o.keep_artifacts) keep = std::filesystem::path("microfor-asm") / names[k];
    const std::string assembly = compile_to_asm(*compiler, emit_kernel(spec), 0, keep);
    counts[k] = count_jumps(assembly, spec.function_name);
    j[names[k]] = {{"unconditional", counts[k].unconditional}, {"conditional", counts[k].conditional}};
    if (!o.json) {
      out << names[k] << ": unconditional " << counts[k].unconditional << ", conditional "
          << counts[k].conditional << "\n";
    }
  }
  if (counts[0].total() > counts[1].total()) {
    return finish("pass", "traditional loop has more jumps than micro loop", kSuccess);
  }
  return finish("fail", "traditional loop does not have more jumps than micro loop", kInternalError);
}

int cmd_report(const Options& o, const Settings& settings, std::ostream& out) {
  if (o.replay.empty() == !o.live) throw UserError("report needs exactly one of --replay or --live");
  const cost::CostModel model = resolve_model(o.model, settings);
  std::vector<stats::EfficiencyRow> rows;
  std::optional<stats::StatsSummary> summary;
  std::string source;
  if (!o.replay.empty()) {
    try {
      stats::Replay r = stats::replay(read_text(o.replay));
      rows = std::move(r.rows);
      summary = r.summary;
    } catch (const std::invalid_argument& e) {
      throw UserError(e.what());
    }
    source = "replayed from " + std::filesystem::path(o.replay).filename().string();
  } else {
    std::vector<std::string> texts = o.n_values;
    if (texts.empty()) texts = {"1000000", "2000000", "4000000", "8000000"};
    auto result = bench::sweep(bench_n_values(texts), bench_config(o, settings));
    rows = std::move(result.rows);
    summary = result.summary;
    source = "measured on this machine";
  }
  const auto ns = published_n_values();
  const auto bundle = report::make_bundle(model, ns, std::move(rows), summary, source);
  report::write_report(bundle, o.out_dir);
  const std::vector<std::string> files = {"report.md", "theoretical.csv", "experimental.csv", "efficiency.svg"};
  if (o.json) {
    json written = json::array();
    for (const auto& f : files) written.push_back((std::filesystem::path(o.out_dir) / f).string());
    out << json{{"written", written}}.dump(2) << "\n";
  } else {
    for (const auto& f : files) out << (std::filesystem::path(o.out_dir) / f).string() << "\n";
  }
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Loop-form rewriting, cost model and benchmark toolkit", "microfor"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--config", o.config, "JSON file pinning the cost model and bench defaults");

  auto json_flag = [&](CLI::App* sub) { sub->add_flag("--json", o.json, "Machine-readable output"); };

  auto* parse = app.add_subcommand("parse", "Parse a source file and print its canonical form");
  parse->add_option("file", o.file, "Source file")->required();
  parse->add_flag("--emit-ast", o.emit_ast, "Print the syntax tree as JSON");
  json_flag(parse);

  auto* analyze = app.add_subcommand("analyze", "Classify each top-level loop for the rewrite");
  analyze->add_option("file", o.file, "Source file")->required();
  json_flag(analyze);

  auto* transform = app.add_subcommand("transform", "Rewrite top-level loops to the micro form");
  transform->add_option("file", o.file, "Source file")->required();
  transform->add_option("-o,--output", o.output, "Write the result here instead of stdout");
  transform->add_flag("--compensate", o.compensate, "Rewrite body reads of the induction variable to (v - 1)");
  transform->add_flag("--post-fixup", o.post_fixup, "Restore the induction variable's exit value after the loop");
  json_flag(transform);

  auto* interpret = app.add_subcommand("interpret", "Run the first top-level loop and print its trace");
  interpret->add_option("file", o.file, "Source file")->required();
  interpret->add_option("--set", o.bindings, "Initial binding name=value (repeatable)");
  interpret->add_option("--induction", o.induction, "Induction variable (default: init target)");
  interpret->add_option("--fuel", o.fuel, "Iteration budget")->check(CLI::PositiveNumber);
  json_flag(interpret);

  auto* predict = app.add_subcommand("predict", "Theoretical times from the per-iteration cost model");
  predict->add_option("--n", o.n_values, "Iteration count(s)")->delimiter(',');
  predict->add_flag("--table-4", o.table4, "Regenerate the seven published theoretical rows");
  predict->add_option("--model", o.model, "Cost model JSON");
  predict->add_option("--clock-hz", o.clock_hz, "Also report cycles per iteration at this clock")
      ->check(CLI::PositiveNumber);
  json_flag(predict);

  auto* bench = app.add_subcommand("bench", "Time both loop forms natively");
  bench->add_option("--n", o.n_values, "Iteration count(s)")->delimiter(',')->required();
  bench->add_option("--reps", o.reps, "Timed repetitions per form (>= 3)");
  bench->add_option("--warmup", o.warmup, "Untimed repetitions per form (>= 1)");
  bench->add_option("--body", o.body, "Loop body: accumulator or empty");
  bench->add_option("--csv", o.csv, "Write rows as CSV");
  json_flag(bench);

  auto* stats = app.add_subcommand("stats", "Efficiency statistics");
  stats->add_option("--input", o.input, "CSV with one numeric column or an efficiency_pct column");
  stats->add_option("--replay", o.replay, "CSV of recorded n,t_for_ms,t_micro_ms[,efficiency_pct]");
  json_flag(stats);

  auto* asm_verify = app.add_subcommand("asm-verify", "Count jumps in compiler output for both loop forms");
  asm_verify->add_flag("--keep-artifacts", o.keep_artifacts, "Keep sources and assembly under ./microfor-asm");
  json_flag(asm_verify);

  auto* report = app.add_subcommand("report", "Write markdown, CSV and SVG report files");
  report->add_option("--out", o.out_dir, "Output directory")->required();
  report->add_option("--replay", o.replay, "Recorded measurements to replay");
  report->add_flag("--live", o.live, "Measure on this machine");
  report->add_option("--n", o.n_values, "Iteration counts for --live")->delimiter(',');
  report->add_option("--reps", o.reps, "Timed repetitions for --live");
  report->add_option("--model", o.model, "Cost model JSON");
  json_flag(report);

  std::vector<std::string> reversed(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(reversed.begin(), reversed.end());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << kGrammar;
    return kUserError;
  }

  try {
    const Settings settings = load_settings(o.config);
    if (*parse) return cmd_parse(o, out);
    if (*analyze) return cmd_analyze(o, out);
    if (*transform) return cmd_transform(o, out, err);
    if (*interpret) return cmd_interpret(o, out);
    if (*predict) return cmd_predict(o, settings, out);
    if (*bench) return cmd_bench(o, settings, out, err);
    if (*stats) return cmd_stats(o, out, err);
    if (*asm_verify) return cmd_asm_verify(o, out);
    if (*report) return cmd_report(o, settings, out);
  } catch (const UserError& e) {
    err << "error: " << e.what() << "\n";
    return kUserError;
  } catch (const LexError& e) {
    err << o.file << ": " << e.what() << "\n";
    return kUserError;
  } catch (const ParseError& e) {
    err << o.file << ": " << e.what() << "\n";
    return kUserError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  err << kGrammar;
  return kUserError;
}

}  // namespace microfor::cli
