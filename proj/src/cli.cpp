#include "hrgap/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hrgap/errors.hpp"
#include "hrgap/evaluator.hpp"
#include "hrgap/gap_protocol.hpp"
#include "hrgap/ingest.hpp"
#include "hrgap/report.hpp"

namespace hrgap {

namespace {

struct InputSpec {
  std::filesystem::path path;
  std::string label;  // empty = use file stem
};

// `path` or `path:LABEL`. The suffix is a label only when it cannot be part
// of a path itself.
InputSpec split_input(const std::string& arg) {
  const auto pos = arg.rfind(':');
  if (pos != std::string::npos && pos + 1 < arg.size() &&
      arg.find('/', pos) == std::string::npos) {
    return {std::filesystem::path(arg.substr(0, pos)), arg.substr(pos + 1)};
  }
  return {std::filesystem::path(arg), {}};
}

std::string default_output(ReportFormat format) {
  switch (format) {
    case ReportFormat::markdown:
      return "report.md";
    case ReportFormat::csv:
      return "report.csv";
    case ReportFormat::json:
      return "report.json";
  }
  return "report.out";
}

std::string sanitize(const std::string& s) {
  std::string out = s;
  for (char& ch : out) {
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '-' && ch != '_') ch = '_';
  }
  return out;
}

std::string gap_text(double minutes) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", minutes);
  return buf;
}

}  // namespace

int run_cli(const std::vector<std::string>& argv) {
  CLI::App app{"Benchmark of short heart-rate gap imputation methods"};

  std::vector<std::string> inputs;
  std::string time_col = "time";
  std::string hr_col = "hr";
  std::vector<std::string> method_names{"linear", "pchip", "bspline", "knn"};
  std::string format_name = "markdown";
  std::string output;
  bool emit_plan = false;
  BenchmarkConfig cfg;

  app.add_option("--input", inputs, "input CSV, `path` or `path:LABEL`; repeatable")
      ->required()
      ->type_name("PATH[:LABEL]");
  app.add_option("--time-col", time_col, "timestamp column name")->capture_default_str();
  app.add_option("--hr-col", hr_col, "heart-rate column name")->capture_default_str();
  app.add_option("--gap-sizes", cfg.gap_sizes_minutes, "injected gap lengths, minutes")
      ->capture_default_str();
  app.add_option("--spacing", cfg.spacing_minutes, "minutes between injected gaps")
      ->capture_default_str();
  app.add_option("--methods", method_names, "imputation methods to run")->capture_default_str();
  app.add_option("--knn-k", cfg.knn_k, "neighbors for knn")->capture_default_str();
  app.add_option("--bins", cfg.n_bins, "histogram bins for the JS distance")
      ->capture_default_str();
  app.add_option("--dt", cfg.dt_seconds, "grid step, seconds")->capture_default_str();
  app.add_option("--format", format_name, "report format: markdown, csv, json")
      ->capture_default_str();
  app.add_option("--output", output, "report path (default report.md/.csv/.json)");
  app.add_flag("--emit-plan", emit_plan, "also write gap-plan JSON per (input, gap size)");

  try {
    // CLI11 wants mutable argc/argv-style input; feed it the usual way.
    std::vector<const char*> cargv;
    cargv.reserve(argv.size());
    for (const auto& a : argv) cargv.push_back(a.c_str());
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  const auto format = parse_report_format(format_name);
  if (!format) {
    std::cerr << "unknown format '" << format_name << "'; valid: markdown, csv, json\n";
    return kExitConfigError;
  }
  if (output.empty()) output = default_output(*format);

  cfg.methods.clear();
  for (const auto& name : method_names) {
    const auto m = parse_method(name);
    if (!m) {
      std::cerr << "unknown method '" << name << "'; valid: linear, pchip, bspline, knn\n";
      return kExitConfigError;
    }
    cfg.methods.push_back(*m);
  }
  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kExitConfigError;
  }

  std::vector<HeartRateSeries> series;
  try {
    for (const auto& arg : inputs) {
      const InputSpec spec = split_input(arg);
      try {
        series.push_back(ingest_csv(spec.path, time_col, hr_col, cfg.dt_seconds, spec.label).series);
      } catch (const EmptySeriesError& e) {
        std::cerr << spec.path.string() << ": " << e.what() << " (skipped)\n";
      }
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kExitDataError;
  }
  if (series.empty()) {
    std::cerr << "no usable input series\n";
    return kExitDataError;
  }

  BenchmarkResult result;
  try {
    result = run_benchmark(series, cfg);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kExitConfigError;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kExitDataError;
  }

  const std::filesystem::path out_path(output);
  try {
    write_atomic(out_path, render(result, cfg, *format));
    if (emit_plan) {
      const auto dir = out_path.has_parent_path() ? out_path.parent_path()
                                                  : std::filesystem::path(".");
      for (std::size_t i = 0; i < series.size(); ++i) {
        for (double gap : cfg.gap_sizes_minutes) {
          nlohmann::json j;
          try {
            j = plan_to_json(plan_gaps(series[i], gap, cfg.spacing_minutes));
          } catch (const SeriesTooShortError&) {
            continue;  // already noted by the benchmark run
          }
          const auto name = "plan_" + sanitize(series[i].source_label) + "_" + std::to_string(i) +
                            "_" + gap_text(gap) + "min.json";
          write_atomic(dir / name, j.dump(2) + "\n");
        }
      }
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kExitDataError;
  }

  for (const auto& table : result.tables) {
    std::cout << table.dataset_label << ", " << gap_text(table.gap_minutes) << " min gaps: ";
    const int best = table.best_column(0);
    if (best < 0) {
      std::cout << "no gaps scored\n";
      continue;
    }
    std::size_t scored = 0;
    for (const auto& s : table.summaries) scored = std::max(scored, s.n_gaps_scored);
    char value[64];
    std::snprintf(value, sizeof(value), "%.4f", table.cells(0, best));
    std::cout << scored << " gaps scored, best RMSE " << method_name(table.methods[best]) << " ("
              << value << ")\n";
  }
  std::cout << "report written: " << out_path.string() << "\n";
  return kExitOk;
}

}  // namespace hrgap
