#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"

#include "hrgap/evaluator.hpp"
#include "hrgap/gap_protocol.hpp"

namespace hrgap {

enum class ReportFormat { markdown, csv, json };

std::optional<ReportFormat> parse_report_format(std::string_view name);
std::string_view report_format_name(ReportFormat f);

/// Summary tables (metric rows x method columns) with the best cell of
/// each row in bold, plus gap counts and the pooled-concatenation variants
/// of the statistical distances as footnotes.
std::string to_markdown(const BenchmarkResult& result, const BenchmarkConfig& cfg);

/// Long form, one row per table cell:
/// dataset,gap_minutes,method,metric,value,n_gaps. Values are emitted with
/// shortest round-trip precision.
std::string to_csv(const BenchmarkResult& result);

/// Full audit dump: config, tables, rankings, and every per-gap score.
nlohmann::json to_json(const BenchmarkResult& result, const BenchmarkConfig& cfg);

std::string render(const BenchmarkResult& result, const BenchmarkConfig& cfg, ReportFormat format);

/// GapPlan audit serialization: gap_len, spacing, [start, length] windows,
/// skipped count.
nlohmann::json plan_to_json(const GapPlan& plan);

/// Writes content to a temporary sibling file, then renames it over path.
void write_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace hrgap
