#pragma once

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "hrgap/series.hpp"

namespace testutil {

inline hrgap::HeartRateSeries make_series(const std::vector<double>& values, double t0 = 0.0,
                                          double dt = 60.0, std::string label = "test") {
  hrgap::HeartRateSeries s;
  s.t0 = t0;
  s.dt = dt;
  s.source_label = std::move(label);
  s.values.resize(static_cast<hrgap::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) s.values[static_cast<hrgap::Index>(i)] = values[i];
  return s;
}

inline hrgap::ObservedPoints make_points(const std::vector<double>& xs,
                                         const std::vector<double>& ys) {
  hrgap::ObservedPoints p;
  p.xs.resize(static_cast<hrgap::Index>(xs.size()));
  p.ys.resize(static_cast<hrgap::Index>(ys.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) p.xs[static_cast<hrgap::Index>(i)] = xs[i];
  for (std::size_t i = 0; i < ys.size(); ++i) p.ys[static_cast<hrgap::Index>(i)] = ys[i];
  return p;
}

inline std::vector<double> to_vec(const hrgap::ArrayXd& a) {
  return {a.data(), a.data() + a.size()};
}

// Scratch directory unique to this process; files persist until reboot.
inline std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("hrgap_tests_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::filesystem::path write_file(const std::string& name, const std::string& content) {
  const auto path = scratch_dir() / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  return path;
}

}  // namespace testutil
