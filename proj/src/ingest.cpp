#include "hrgap/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "hrgap/errors.hpp"

namespace hrgap {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Grid size past which a timestamp range is treated as corrupt input.
constexpr Index kMaxGridSlots = 100'000'000;

std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

// Full-string numeric parse, locale independent.
std::optional<double> parse_number(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  double value = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) return std::nullopt;
  return value;
}

// Days since 1970-01-01 for a proleptic Gregorian civil date.
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const auto yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

bool valid_civil(std::int64_t y, unsigned m, unsigned d) {
  if (m < 1 || m > 12 || d < 1) return false;
  static constexpr unsigned lengths[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  unsigned len = lengths[m - 1];
  const bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
  if (m == 2 && leap) len = 29;
  return d <= len;
}

// Fixed-width unsigned integer; advances pos on success.
bool parse_digits(std::string_view s, std::size_t& pos, unsigned width, unsigned& out) {
  if (pos + width > s.size()) return false;
  unsigned v = 0;
  for (unsigned i = 0; i < width; ++i) {
    const char c = s[pos + i];
    if (c < '0' || c > '9') return false;
    v = v * 10 + static_cast<unsigned>(c - '0');
  }
  out = v;
  pos += width;
  return true;
}

// ISO-8601 date-time: YYYY-MM-DD[T ]HH:MM:SS[.frac][Z|+HH[:MM]|-HH[:MM]].
// Date-only input resolves to midnight. No offset means UTC.
std::optional<double> parse_iso8601(std::string_view s) {
  std::size_t pos = 0;
  unsigned year = 0, month = 0, day = 0;
  if (!parse_digits(s, pos, 4, year)) return std::nullopt;
  if (pos >= s.size() || s[pos] != '-') return std::nullopt;
  ++pos;
  if (!parse_digits(s, pos, 2, month)) return std::nullopt;
  if (pos >= s.size() || s[pos] != '-') return std::nullopt;
  ++pos;
  if (!parse_digits(s, pos, 2, day)) return std::nullopt;
  if (!valid_civil(year, month, day)) return std::nullopt;

  double seconds_of_day = 0.0;
  double offset_seconds = 0.0;
  if (pos < s.size()) {
    if (s[pos] != 'T' && s[pos] != 't' && s[pos] != ' ') return std::nullopt;
    ++pos;
    unsigned hh = 0, mm = 0, ss = 0;
    if (!parse_digits(s, pos, 2, hh)) return std::nullopt;
    if (pos >= s.size() || s[pos] != ':') return std::nullopt;
    ++pos;
    if (!parse_digits(s, pos, 2, mm)) return std::nullopt;
    if (pos >= s.size() || s[pos] != ':') return std::nullopt;
    ++pos;
    if (!parse_digits(s, pos, 2, ss)) return std::nullopt;
    if (hh > 23 || mm > 59 || ss > 59) return std::nullopt;
    seconds_of_day = hh * 3600.0 + mm * 60.0 + ss;

    if (pos < s.size() && s[pos] == '.') {
      ++pos;
      const std::size_t frac_start = pos;
      double frac = 0.0, scale = 0.1;
      while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
        frac += (s[pos] - '0') * scale;
        scale *= 0.1;
        ++pos;
      }
      if (pos == frac_start) return std::nullopt;
      seconds_of_day += frac;
    }

    if (pos < s.size()) {
      const char c = s[pos];
      if (c == 'Z' || c == 'z') {
        ++pos;
      } else if (c == '+' || c == '-') {
        ++pos;
        unsigned oh = 0, om = 0;
        if (!parse_digits(s, pos, 2, oh)) return std::nullopt;
        if (pos < s.size() && s[pos] == ':') ++pos;
        if (pos < s.size()) {
          if (!parse_digits(s, pos, 2, om)) return std::nullopt;
        }
        if (oh > 23 || om > 59) return std::nullopt;
        offset_seconds = oh * 3600.0 + om * 60.0;
        if (c == '-') offset_seconds = -offset_seconds;
      } else {
        return std::nullopt;
      }
    }
  }
  if (pos != s.size()) return std::nullopt;

  const double days = static_cast<double>(days_from_civil(year, month, day));
  return days * 86400.0 + seconds_of_day - offset_seconds;
}

// Splits a CSV byte stream into rows of fields: comma separated, double
// quotes with "" escapes, newlines allowed inside quoted fields, CRLF and
// LF both accepted, a UTF-8 BOM stripped.
std::vector<std::vector<std::string>> split_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool in_quotes = false;
  bool row_started = false;

  if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

  auto end_field = [&] {
    row.push_back(std::move(field));
    field.clear();
  };
  auto end_row = [&] {
    end_field();
    rows.push_back(std::move(row));
    row.clear();
    row_started = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        in_quotes = true;
        row_started = true;
        break;
      case ',':
        end_field();
        row_started = true;
        break;
      case '\r':
        break;  // handled with the following \n; stray \r is dropped
      case '\n':
        if (row_started || !field.empty() || !row.empty()) end_row();
        break;
      default:
        field += c;
        row_started = true;
        break;
    }
  }
  if (row_started || !field.empty() || !row.empty()) end_row();
  return rows;
}

}  // namespace

std::optional<double> parse_timestamp(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) return std::nullopt;
  if (auto v = parse_number(s); v && std::isfinite(*v)) return v;
  return parse_iso8601(s);
}

ParsedCsv parse_csv(const std::filesystem::path& path, const std::string& time_col,
                    const std::string& hr_col) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileNotFoundError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  const auto rows = split_csv(text);
  if (rows.empty()) throw MalformedHeaderError(path.string() + ": no header row");

  const auto& header = rows.front();
  auto find_col = [&](const std::string& name) -> std::size_t {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (trim(header[i]) == name) return i;
    }
    throw MalformedHeaderError(path.string() + ": column '" + name + "' not in header");
  };
  const std::size_t time_idx = find_col(time_col);
  const std::size_t hr_idx = find_col(hr_col);

  ParsedCsv out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    ++out.rows_read;
    if (row.size() != header.size()) {
      ++out.rows_unreadable;
      continue;
    }
    out.records.push_back({row[time_idx], row[hr_idx]});
  }
  return out;
}

NormalizedRecords normalize_timestamps(const std::vector<RawRecord>& records) {
  NormalizedRecords out;
  out.records.reserve(records.size());
  for (const auto& rec : records) {
    if (auto t = parse_timestamp(rec.timestamp_text)) {
      out.records.push_back({*t, rec.hr_text});
    } else {
      ++out.dropped_invalid;
    }
  }
  return out;
}

std::pair<HeartRateSeries, IngestReport> clean_and_grid(const std::vector<StampedRecord>& records,
                                                        double dt, const std::string& label) {
  if (!(dt > 0.0)) throw ConfigError("grid step must be positive");

  IngestReport report;
  report.rows_read = records.size();

  struct Sample {
    double t;
    double v;
  };
  std::vector<Sample> kept;
  kept.reserve(records.size());
  for (const auto& rec : records) {
    const std::string_view hr = trim(rec.hr_text);
    if (hr.empty()) {
      ++report.rows_dropped_missing;
      continue;
    }
    const auto v = parse_number(hr);
    if (!v || !std::isfinite(*v) || *v <= 0.0) {
      ++report.rows_dropped_invalid;
      continue;
    }
    kept.push_back({rec.unix_seconds, *v});
  }
  if (kept.empty()) throw EmptySeriesError("no record survived cleaning");

  double t_min = kept.front().t;
  double t_max = kept.front().t;
  for (const auto& s : kept) {
    t_min = std::min(t_min, s.t);
    t_max = std::max(t_max, s.t);
  }
  const double t0 = std::floor(t_min / dt) * dt;
  const double span = std::floor((t_max - t0) / dt);
  if (!(span >= 0.0) || span >= static_cast<double>(kMaxGridSlots)) {
    throw Error("timestamp range or grid step produces an unreasonable grid size");
  }
  const Index n = static_cast<Index>(span) + 1;

  ArrayXd sums = ArrayXd::Zero(n);
  std::vector<Index> counts(static_cast<std::size_t>(n), 0);
  for (const auto& s : kept) {
    auto i = static_cast<Index>(std::floor((s.t - t0) / dt));
    i = std::clamp<Index>(i, 0, n - 1);
    sums[i] += s.v;
    if (counts[static_cast<std::size_t>(i)] > 0) ++report.rows_dropped_duplicate;
    ++counts[static_cast<std::size_t>(i)];
  }

  HeartRateSeries series;
  series.t0 = t0;
  series.dt = dt;
  series.source_label = label;
  series.values = ArrayXd::Constant(n, kNaN);
  for (Index i = 0; i < n; ++i) {
    const Index c = counts[static_cast<std::size_t>(i)];
    if (c == 0) {
      ++report.buckets_empty;
    } else {
      series.values[i] = sums[i] / static_cast<double>(c);
    }
  }
  return {std::move(series), report};
}

IngestResult ingest_csv(const std::filesystem::path& path, const std::string& time_col,
                        const std::string& hr_col, double dt, const std::string& label) {
  const ParsedCsv parsed = parse_csv(path, time_col, hr_col);
  const NormalizedRecords stamped = normalize_timestamps(parsed.records);
  auto [series, report] = clean_and_grid(stamped.records, dt,
                                         label.empty() ? path.stem().string() : label);
  report.rows_read = parsed.rows_read;
  report.rows_dropped_invalid += parsed.rows_unreadable + stamped.dropped_invalid;
  return {std::move(series), report};
}

}  // namespace hrgap
