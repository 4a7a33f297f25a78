/* Copyright 2026 The opbench Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "opbench/cli.h"

#include <algorithm>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "opbench/errors.h"
#include "opbench/fixtures.h"
#include "opbench/graph.h"
#include "opbench/ingest.h"
#include "opbench/json_io.h"
#include "opbench/microbench.h"
#include "opbench/profiler.h"
#include "opbench/report.h"
#include "opbench/simd/dispatch.h"
#include "opbench/taxonomy.h"
#include "opbench/trace.h"

namespace opbench {

namespace {

using json_io::Json;

// Thrown for flag combinations CLI11 cannot express.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_output(const std::string& path, const std::string& payload, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << payload;
    if (!payload.empty() && payload.back() != '\n') out << '\n';
  } else {
    json_io::write_file(path, payload);
  }
}

// Identifies a JSON file by its version tag or, for bare lists, its shape.
std::string detect_kind(const Json& doc) {
  if (doc.is_object()) {
    if (doc.contains("traceEvents")) return "chrome";
    if (auto v = doc.find("version"); v != doc.end() && v->is_string()) {
      const std::string version = v->get<std::string>();
      if (version == kGraphVersion) return "graph";
      if (version == kTraceVersion) return "trace";
      if (version == kRecordsVersion) return "records";
      if (version == kSuiteVersion) return "suite";
      if (version == kResultsVersion) return "results";
      if (version == kReportVersion) return "report";
      throw VersionError("unknown version '" + version + "'");
    }
    throw SchemaError("object without a 'version' field");
  }
  if (doc.is_array()) {
    if (doc.empty()) return "chrome";
    const Json& first = doc.front();
    if (first.is_object() && first.contains("ph")) return "chrome";
    if (first.is_object() && first.contains("pattern")) return "rules";
    if (first.is_object() && first.contains("seed")) return "suite";
    return "records";
  }
  throw SchemaError("expected a JSON object or list");
}

std::string validate_file(const std::string& path, const RuleSet& rules) {
  const std::string text = json_io::read_file(path);
  const std::string kind = detect_kind(json_io::parse_text(text, path));
  if (kind == "graph") {
    return "graph, " + std::to_string(parse_graph(text).nodes.size()) + " nodes";
  }
  if (kind == "trace") {
    const NormalizedTrace t = parse_trace_text(text, rules);
    std::size_t uncategorized = 0;
    for (const ProfileSample& s : t.samples) uncategorized += s.group == OperatorGroup::kUncategorized;
    return "trace, " + std::to_string(t.samples.size()) + " samples, " + std::to_string(uncategorized) +
           " uncategorized";
  }
  if (kind == "chrome") {
    return "chrome trace, " + std::to_string(convert_chrome_trace_text(text, rules).samples.size()) + " root events";
  }
  if (kind == "records") return "records, " + std::to_string(load_records(path).size()) + " entries";
  if (kind == "suite") return "microbench suite, " + std::to_string(parse_suite(text).size()) + " specs";
  if (kind == "results") return "microbench results, " + std::to_string(parse_results(text).size()) + " entries";
  if (kind == "rules") return "rules, " + std::to_string(load_rules(path).rules().size()) + " rules";
  parse_breakdown_json(text);
  return "report";
}

NormalizedTrace read_any_trace(const std::string& path, const RuleSet& rules, bool force_chrome) {
  if (force_chrome) return convert_chrome_trace(path, rules);
  const std::string text = json_io::read_file(path);
  if (detect_kind(json_io::parse_text(text, path)) == "chrome") return convert_chrome_trace(path, rules);
  return parse_trace_text(text, rules);
}

void select_isa(const std::string& name) {
  if (name.empty()) return;
  for (simd::Isa isa : {simd::Isa::kScalar, simd::Isa::kAvx2, simd::Isa::kNeon}) {
    if (simd::isa_name(isa) == name) {
      if (!simd::isa_available(isa)) throw UsageError("instruction set '" + name + "' is not available here");
      simd::set_active_isa(isa);
      return;
    }
  }
  throw UsageError("unknown instruction set '" + name + "'");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Operator-level workload profiler and microbenchmark harness", "opbench"};
  app.require_subcommand(1);
  std::string isa;
  app.add_option("--isa", isa, "Kernel instruction set: scalar, avx2 or neon (default: best available)");

  std::string rules_path;
  auto add_rules = [&](CLI::App* sub) {
    sub->add_option("--rules", rules_path, "Taxonomy overlay file (overrides OPBENCH_RULES)");
  };

  // validate
  auto* validate = app.add_subcommand("validate", "Check graph, trace, record, suite and rules files");
  std::vector<std::string> validate_files;
  std::string fixtures_dir;
  validate->add_option("files", validate_files, "Files to check");
  validate->add_option("--fixtures", fixtures_dir, "Verify every fixture under this directory");
  add_rules(validate);

  // profile
  auto* profile = app.add_subcommand("profile", "Execute a graph node by node and time each operator");
  std::string graph_path, profile_out, records_out;
  ProfileConfig pconfig;
  bool include_gemm = false;
  profile->add_option("graph", graph_path, "Graph file")->required();
  profile->add_option("-o,--output", profile_out, "Trace output (stdout when omitted)");
  profile->add_option("--records", records_out, "Also write captured shape records here");
  profile->add_flag("--include-gemm", include_gemm, "Keep GEMM operators in the shape records");
  profile->add_option("--warmup", pconfig.warmup, "Untimed passes")->capture_default_str()->check(CLI::Range(0, 100000));
  profile->add_option("--repeats", pconfig.repeats, "Timed passes")->capture_default_str()->check(CLI::Range(1, 100000));
  profile->add_option("--seed", pconfig.seed, "Seed for synthesized inputs and parameters")->capture_default_str();
  add_rules(profile);

  // ingest
  auto* ingest = app.add_subcommand("ingest", "Normalize an external trace");
  std::string ingest_in, ingest_out;
  bool force_chrome = false;
  ingest->add_option("trace", ingest_in, "opbench-trace/1 or Chrome trace file")->required();
  ingest->add_flag("--chrome", force_chrome, "Treat the input as a Chrome trace");
  ingest->add_option("-o,--output", ingest_out, "Normalized trace output (stdout when omitted)");
  add_rules(ingest);

  // report
  auto* report = app.add_subcommand("report", "Per-group latency breakdown of a trace");
  std::string report_in, compare_in, report_out, format_name = "json";
  report->add_option("trace", report_in, "Trace file")->required();
  report->add_option("--format", format_name, "json, csv, markdown or plotdata")
      ->capture_default_str()
      ->check(CLI::IsMember({"json", "csv", "markdown", "md", "plotdata"}));
  report->add_option("--compare", compare_in, "Second trace; emits b/a ratios");
  report->add_option("-o,--output", report_out, "Output path (stdout when omitted)");
  add_rules(report);

  // ubench
  auto* ubench = app.add_subcommand("ubench", "Microbenchmark suites");
  ubench->require_subcommand(1);
  auto* gen = ubench->add_subcommand("gen", "Generate a suite from shape records");
  std::string records_in, suite_out, filter_group, filter_op;
  gen->add_option("records", records_in, "Records file")->required();
  gen->add_option("-o,--output", suite_out, "Suite output (stdout when omitted)");
  gen->add_option("--group", filter_group, "Keep only this operator group");
  gen->add_option("--op", filter_op, "Keep only this operator name");
  auto* urun = ubench->add_subcommand("run", "Run a suite");
  std::string suite_in, results_out;
  MicrobenchConfig mconfig;
  bool quiet = false;
  urun->add_option("suite", suite_in, "Suite file")->required();
  urun->add_option("-o,--output", results_out, "Results output (stdout when omitted)");
  urun->add_option("--warmup", mconfig.warmup, "Untimed calls per spec")->capture_default_str()->check(CLI::Range(0, 1000000));
  urun->add_option("--iterations", mconfig.iterations, "Timed calls per spec")
      ->capture_default_str()
      ->check(CLI::Range(1, 1000000));
  urun->add_flag("-q,--quiet", quiet, "Skip the summary table on stderr");

  // classify
  auto* cls = app.add_subcommand("classify", "Print the operator group of each name");
  std::vector<std::string> names;
  cls->add_option("names", names, "Operator names")->required();
  add_rules(cls);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "opbench: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    select_isa(isa);
    if (validate->parsed()) {
      if (validate_files.empty() && fixtures_dir.empty()) throw UsageError("validate needs files or --fixtures DIR");
      const RuleSet rules = resolve_rules(rules_path);
      bool failed = false;
      for (const std::string& f : validate_files) {
        try {
          out << "OK   " << f << ": " << validate_file(f, rules) << "\n";
        } catch (const Error& e) {
          failed = true;
          out << "FAIL " << f << ": " << e.what() << "\n";
        }
      }
      if (!fixtures_dir.empty()) {
        for (const FixtureCheck& c : check_fixtures(fixtures_dir)) {
          out << (c.ok ? "OK   " : "FAIL ") << c.file << ": " << c.kind << ", " << c.detail << "\n";
          failed = failed || !c.ok;
        }
      }
      if (failed) {
        err << "opbench: validation failed\n";
        return kExitData;
      }
    } else if (profile->parsed()) {
      pconfig.rules = resolve_rules(rules_path);
      const OperatorGraph graph = load_graph(graph_path);
      const ProfileRun run = profile_graph(graph, {}, pconfig);
      write_output(profile_out, serialize_trace(run), out);
      if (!records_out.empty()) save_records(capture_shape_records(run, include_gemm), records_out);
    } else if (ingest->parsed()) {
      const NormalizedTrace t = read_any_trace(ingest_in, resolve_rules(rules_path), force_chrome);
      write_output(ingest_out, serialize_trace(t), out);
    } else if (report->parsed()) {
      const RuleSet rules = resolve_rules(rules_path);
      const ReportFormat format = *parse_report_format(format_name);
      const NormalizedTrace a = read_any_trace(report_in, rules, false);
      if (compare_in.empty()) {
        write_output(report_out, emit(breakdown(a), format, a.model_name.empty() ? "trace" : a.model_name), out);
      } else {
        const NormalizedTrace b = read_any_trace(compare_in, rules, false);
        write_output(report_out,
                     emit(compare(breakdown(a), breakdown(b)), format, a.model_name.empty() ? "a" : a.model_name,
                          b.model_name.empty() ? "b" : b.model_name),
                     out);
      }
    } else if (gen->parsed()) {
      std::optional<OperatorGroup> group;
      if (!filter_group.empty()) {
        group = parse_group(filter_group);
        if (!group) throw UsageError("unknown group '" + filter_group + "'");
      }
      RecordFilter filter = nullptr;
      if (group || !filter_op.empty()) {
        filter = [&](const ShapeRecord& r) {
          return (!group || r.group == *group) &&
                 (filter_op.empty() || normalize_op_name(r.op_name) == normalize_op_name(filter_op));
        };
      }
      write_output(suite_out, serialize_suite(generate_specs(load_records(records_in), filter)), out);
    } else if (urun->parsed()) {
      const std::vector<MicrobenchResult> results = run_suite(load_suite(suite_in), mconfig);
      write_output(results_out, serialize_results(results), out);
      if (!quiet) err << summary_table(results);
      const auto failed = std::count_if(results.begin(), results.end(),
                                        [](const MicrobenchResult& r) { return r.runnable && !r.error.empty(); });
      if (failed > 0) {
        err << "opbench: " << failed << " spec(s) failed\n";
        return kExitData;
      }
    } else if (cls->parsed()) {
      const RuleSet rules = resolve_rules(rules_path);
      for (const std::string& n : names) out << n << "\t" << group_name(classify(n, rules)) << "\n";
    }
  } catch (const UsageError& e) {
    err << "opbench: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ExecError& e) {
    err << "opbench: error in node '" << e.node_id() << "': " << e.what() << "\n";
    return kExitData;
  } catch (const Error& e) {
    err << "opbench: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    err << "opbench: " << e.what() << "\n";
    return kExitData;
  }
  return kExitOk;
}

}  // namespace opbench
