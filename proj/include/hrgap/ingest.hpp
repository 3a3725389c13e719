#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hrgap/series.hpp"

namespace hrgap {

/// One CSV data row, verbatim. Carries no numeric guarantees.
struct RawRecord {
  std::string timestamp_text;
  std::string hr_text;
};

/// parse_csv output: records in file order plus row bookkeeping.
struct ParsedCsv {
  std::vector<RawRecord> records;
  std::size_t rows_read = 0;        ///< data rows seen (header and blank lines excluded)
  std::size_t rows_unreadable = 0;  ///< rows with wrong arity, dropped
};

/// A record whose timestamp has been resolved to Unix seconds.
struct StampedRecord {
  double unix_seconds = 0.0;
  std::string hr_text;
};

struct NormalizedRecords {
  std::vector<StampedRecord> records;
  std::size_t dropped_invalid = 0;  ///< unparseable timestamps
};

/// Bookkeeping for one ingested file.
/// rows_read always equals surviving grid slots plus every dropped category.
struct IngestReport {
  std::size_t rows_read = 0;
  std::size_t rows_dropped_missing = 0;    ///< empty HR field
  std::size_t rows_dropped_duplicate = 0;  ///< extra records in an occupied grid slot
  std::size_t rows_dropped_invalid = 0;    ///< bad timestamp, bad arity, or bad HR value
  std::size_t buckets_empty = 0;           ///< grid slots with no record at all
};

/// Reads a CSV file and extracts the named timestamp and HR columns.
/// Fields follow common CSV rules (comma separated, double quotes with ""
/// escapes, quoted fields may span lines). Rows whose field count differs
/// from the header's are counted unreadable and dropped.
/// Throws FileNotFoundError and MalformedHeaderError.
ParsedCsv parse_csv(const std::filesystem::path& path, const std::string& time_col,
                    const std::string& hr_col);

/// ISO-8601 text (offset-less input is read as UTC) or plain numeric seconds
/// to Unix seconds. Empty optional when the text parses as neither.
std::optional<double> parse_timestamp(std::string_view text);

/// Resolves every record's timestamp; records with unparseable timestamps
/// are dropped and counted.
NormalizedRecords normalize_timestamps(const std::vector<RawRecord>& records);

/// Drops records with empty (missing) or non-numeric/non-finite/<= 0
/// (invalid) HR, buckets the survivors onto a grid of step dt anchored at
/// the first surviving timestamp floored to a dt multiple, and averages
/// records sharing a bucket (extras counted as duplicates). Buckets with no
/// record stay NaN. Throws EmptySeriesError when nothing survives.
std::pair<HeartRateSeries, IngestReport> clean_and_grid(const std::vector<StampedRecord>& records,
                                                        double dt, const std::string& label = {});

struct IngestResult {
  HeartRateSeries series;
  IngestReport report;
};

/// Full ingestion pipeline for one file: parse, normalize, clean, grid.
IngestResult ingest_csv(const std::filesystem::path& path, const std::string& time_col,
                        const std::string& hr_col, double dt, const std::string& label = {});

}  // namespace hrgap
