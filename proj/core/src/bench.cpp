#include "schemeforge/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "schemeforge/csv.hpp"
#include "schemeforge/errors.hpp"

namespace schemeforge {

SampleStats summarize(std::vector<double> samples) {
  if (samples.empty()) throw Error(ErrorCode::InvalidArgument, "no samples to summarize");
  std::sort(samples.begin(), samples.end());
  const std::size_t n = samples.size();
  SampleStats s;
  s.median = n % 2 == 1 ? samples[n / 2] : 0.5 * (samples[n / 2 - 1] + samples[n / 2]);
  for (double v : samples) s.mean += v;
  s.mean /= static_cast<double>(n);
  if (n > 1) {
    double ss = 0.0;
    for (double v : samples) ss += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(ss / static_cast<double>(n - 1));
  }
  return s;
}

BenchReport run_benchmark(const BenchCase& bench, std::size_t n_repeats) {
  if (n_repeats < 1) throw Error(ErrorCode::InvalidArgument, "need at least one repeat", "repeats");
  if (!bench.solve) throw Error(ErrorCode::InvalidArgument, "benchmark has no solve callable");
  BenchReport r;
  r.label = bench.label;
  r.n = n_repeats;
  r.bytes = bench.allocated_bytes;
  r.samples_s.reserve(n_repeats);
  for (std::size_t i = 0; i < n_repeats; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    bench.solve();
    r.samples_s.push_back(
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  const auto s = summarize(r.samples_s);
  r.median_s = s.median;
  r.mean_s = s.mean;
  r.stddev_s = s.stddev;
  return r;
}

namespace {

// Shared by the table and the CSV so both carry identical numbers.
std::vector<std::vector<std::string>> bench_rows(const std::vector<BenchReport>& reports) {
  double fastest = 0.0;
  for (const auto& r : reports)
    if (fastest == 0.0 || r.median_s < fastest) fastest = r.median_s;
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : reports) {
    rows.push_back({r.label, std::to_string(r.n), format_number(r.median_s),
                    format_number(r.mean_s), format_number(r.stddev_s), std::to_string(r.bytes),
                    format_number(fastest > 0.0 ? r.median_s / fastest : 1.0)});
  }
  return rows;
}

}  // namespace

std::string render_bench_table(const std::vector<BenchReport>& reports) {
  const std::vector<std::string> header{"Scheme", "n", "Median [s]", "Mean [s]", "Std [s]",
                                        "Bytes", "Relative"};
  const auto rows = bench_rows(reports);
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    width[c] = header[c].size();
    for (const auto& r : rows) width[c] = std::max(width[c], r[c].size());
  }
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      os << (c == 0 ? std::left : std::right) << std::setw(static_cast<int>(width[c])) << cells[c];
      os << (c + 1 < cells.size() ? "  " : "\n");
    }
  };
  line(header);
  for (const auto& r : rows) line(r);
  return os.str();
}

std::string render_bench_csv(const std::vector<BenchReport>& reports) {
  std::string out = "scheme,n,median_s,mean_s,std_s,bytes,relative\n";
  for (const auto& r : bench_rows(reports)) {
    for (std::size_t c = 0; c < r.size(); ++c) out += (c ? "," : "") + r[c];
    out += '\n';
  }
  return out;
}

}  // namespace schemeforge
