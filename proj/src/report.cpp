#include "hrgap/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hrgap/errors.hpp"

namespace hrgap {

namespace {

// Shortest text that parses back to the same double.
std::string round_trip(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Fixed four decimals for human-readable tables.
std::string cell_text(double v) {
  if (std::isnan(v)) return "-";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

std::string minutes_text(double minutes) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", minutes);
  return buf;
}

std::string optional_text(const std::optional<double>& v) {
  return v ? cell_text(*v) : std::string("-");
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  quoted += '"';
  return quoted;
}

nlohmann::json score_json(const GapScore& s) {
  nlohmann::json j{{"rmse", s.rmse}, {"mae", s.mae}, {"mape", s.mape}, {"jsd", s.jsd}};
  if (s.cdt) {
    j["cdt"] = *s.cdt;
  } else {
    j["cdt"] = nullptr;
  }
  return j;
}

nlohmann::json summary_json(const MethodSummary& s) {
  nlohmann::json j{{"method", std::string(method_name(s.method))},
                   {"gap_minutes", s.gap_minutes},
                   {"n_gaps_scored", s.n_gaps_scored},
                   {"n_gaps_skipped", s.n_gaps_skipped},
                   {"n_cdt_absent", s.n_cdt_absent}};
  if (s.n_gaps_scored > 0) {
    j["mean_rmse"] = s.mean_rmse;
    j["mean_mae"] = s.mean_mae;
    j["mean_mape"] = s.mean_mape;
    j["mean_cdt"] = s.mean_cdt ? nlohmann::json(*s.mean_cdt) : nlohmann::json(nullptr);
    j["mean_jsd"] = s.mean_jsd;
    j["pooled_cdt"] = s.pooled_cdt ? nlohmann::json(*s.pooled_cdt) : nlohmann::json(nullptr);
    j["pooled_jsd"] = s.pooled_jsd ? nlohmann::json(*s.pooled_jsd) : nlohmann::json(nullptr);
  }
  return j;
}

}  // namespace

std::optional<ReportFormat> parse_report_format(std::string_view name) {
  if (name == "markdown") return ReportFormat::markdown;
  if (name == "csv") return ReportFormat::csv;
  if (name == "json") return ReportFormat::json;
  return std::nullopt;
}

std::string_view report_format_name(ReportFormat f) {
  switch (f) {
    case ReportFormat::markdown:
      return "markdown";
    case ReportFormat::csv:
      return "csv";
    case ReportFormat::json:
      return "json";
  }
  return "unknown";
}

std::string to_markdown(const BenchmarkResult& result, const BenchmarkConfig& cfg) {
  std::ostringstream out;
  out << "# Gap imputation benchmark\n\n";
  out << "Per-gap scores are pooled across all series of a dataset before averaging,"
         " so every gap weighs equally. Lower is better for every metric.\n";
  out << "CDT bands: <= 0.2 small, <= 0.5 medium, <= 0.8 significant difference.\n\n";
  out << "Configuration: spacing " << minutes_text(cfg.spacing_minutes) << " min, " << cfg.n_bins
      << " histogram bins, grid step " << round_trip(cfg.dt_seconds) << " s, knn k=" << cfg.knn_k
      << ".\n";

  for (const auto& table : result.tables) {
    out << "\n## " << table.dataset_label << " - " << minutes_text(table.gap_minutes)
        << " min gaps\n\n";
    out << "| Metric |";
    for (Method m : table.methods) out << " " << method_name(m) << " |";
    out << "\n|---|";
    for (std::size_t i = 0; i < table.methods.size(); ++i) out << "---|";
    out << "\n";
    for (int row = 0; row < 5; ++row) {
      out << "| " << ReportTable::kMetricNames[static_cast<std::size_t>(row)] << " |";
      const int best = table.best_column(row);
      const double best_value = best >= 0 ? table.cells(row, best) : 0.0;
      for (Index c = 0; c < table.cells.cols(); ++c) {
        const double v = table.cells(row, c);
        if (best >= 0 && !std::isnan(v) && v == best_value) {
          out << " **" << cell_text(v) << "** |";
        } else {
          out << " " << cell_text(v) << " |";
        }
      }
      out << "\n";
    }

    out << "\nGaps scored";
    for (const auto& s : table.summaries) {
      out << " | " << method_name(s.method) << ": " << s.n_gaps_scored;
      if (s.n_gaps_skipped > 0) out << " (+" << s.n_gaps_skipped << " skipped)";
      if (s.n_cdt_absent > 0) out << " (CDT absent for " << s.n_cdt_absent << ")";
    }
    out << "\n";
    out << "All-gaps-concatenated variants - CDT:";
    for (const auto& s : table.summaries) {
      out << " " << method_name(s.method) << " " << optional_text(s.pooled_cdt);
    }
    out << "; JS distance:";
    for (const auto& s : table.summaries) {
      out << " " << method_name(s.method) << " " << optional_text(s.pooled_jsd);
    }
    out << "\n";
  }

  if (!result.series_notes.empty()) {
    out << "\n## Skipped series\n\n";
    for (const auto& note : result.series_notes) out << "- " << note << "\n";
  }
  return out.str();
}

std::string to_csv(const BenchmarkResult& result) {
  std::ostringstream out;
  out << "dataset,gap_minutes,method,metric,value,n_gaps\n";
  for (const auto& table : result.tables) {
    for (std::size_t c = 0; c < table.methods.size(); ++c) {
      const auto& summary = table.summaries[c];
      for (int row = 0; row < 5; ++row) {
        const double v = table.cells(row, static_cast<Index>(c));
        out << csv_field(table.dataset_label) << "," << round_trip(table.gap_minutes) << ","
            << method_name(table.methods[c]) << ","
            << ReportTable::kMetricNames[static_cast<std::size_t>(row)] << ","
            << (std::isnan(v) ? "" : round_trip(v)) << "," << summary.n_gaps_scored << "\n";
      }
    }
  }
  return out.str();
}

nlohmann::json to_json(const BenchmarkResult& result, const BenchmarkConfig& cfg) {
  nlohmann::json root;
  std::vector<std::string> method_names;
  for (Method m : cfg.methods) method_names.emplace_back(method_name(m));
  root["config"] = {{"gap_sizes_minutes", cfg.gap_sizes_minutes},
                    {"spacing_minutes", cfg.spacing_minutes},
                    {"methods", method_names},
                    {"n_bins", cfg.n_bins},
                    {"dt_seconds", cfg.dt_seconds},
                    {"knn_k", cfg.knn_k},
                    {"knn_epsilon", cfg.knn_epsilon}};

  root["tables"] = nlohmann::json::array();
  for (const auto& table : result.tables) {
    nlohmann::json jt;
    jt["dataset"] = table.dataset_label;
    jt["gap_minutes"] = table.gap_minutes;
    jt["metrics"] = ReportTable::kMetricNames;
    jt["columns"] = nlohmann::json::array();
    for (std::size_t c = 0; c < table.methods.size(); ++c) {
      nlohmann::json col = summary_json(table.summaries[c]);
      nlohmann::json cells = nlohmann::json::array();
      for (int row = 0; row < 5; ++row) {
        const double v = table.cells(row, static_cast<Index>(c));
        cells.push_back(std::isnan(v) ? nlohmann::json(nullptr) : nlohmann::json(v));
      }
      col["cells"] = cells;
      jt["columns"].push_back(col);
    }
    root["tables"].push_back(jt);
  }

  root["rankings"] = nlohmann::json::array();
  for (const auto& r : rank_methods(result.tables)) {
    root["rankings"].push_back({{"dataset", r.dataset},
                                {"gap_minutes", r.gap_minutes},
                                {"metric", r.metric},
                                {"method", std::string(method_name(r.method))},
                                {"mean", r.mean},
                                {"rank", r.rank}});
  }

  root["gaps"] = nlohmann::json::array();
  for (const auto& g : result.gap_records) {
    root["gaps"].push_back({{"dataset", g.dataset},
                            {"gap_minutes", g.gap_minutes},
                            {"method", std::string(method_name(g.method))},
                            {"series_index", g.series_index},
                            {"window_start", g.window_start},
                            {"window_length", g.window_length},
                            {"score", score_json(g.score)}});
  }

  root["series_notes"] = result.series_notes;
  return root;
}

std::string render(const BenchmarkResult& result, const BenchmarkConfig& cfg,
                   ReportFormat format) {
  switch (format) {
    case ReportFormat::markdown:
      return to_markdown(result, cfg);
    case ReportFormat::csv:
      return to_csv(result);
    case ReportFormat::json:
      return to_json(result, cfg).dump(2) + "\n";
  }
  throw ConfigError("unknown report format");
}

nlohmann::json plan_to_json(const GapPlan& plan) {
  nlohmann::json windows = nlohmann::json::array();
  for (const auto& w : plan.windows) {
    windows.push_back(nlohmann::json::array({w.start_index, w.length}));
  }
  return nlohmann::json{{"gap_len", plan.gap_len},
                        {"spacing", plan.spacing},
                        {"windows", windows},
                        {"skipped_windows", plan.skipped_windows}};
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  namespace fs = std::filesystem;
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  fs::path tmp = dir / (path.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error("short write to " + tmp.string());
  }
  fs::rename(tmp, path);
}

}  // namespace hrgap
