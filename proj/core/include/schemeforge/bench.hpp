#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace schemeforge {

struct BenchCase {
  std::string label;
  /// One full solve; must leave the system ready for the next repeat.
  std::function<void()> solve;
  /// Bytes held by the problem-owned data structures.
  std::size_t allocated_bytes = 0;
};

struct BenchReport {
  std::string label;
  std::size_t n = 0;
  double median_s = 0.0;
  double mean_s = 0.0;
  double stddev_s = 0.0;
  std::size_t bytes = 0;
  std::vector<double> samples_s;
};

struct SampleStats {
  double median = 0.0;
  double mean = 0.0;
  /// Sample standard deviation (n - 1); 0 for a single sample.
  double stddev = 0.0;
};

SampleStats summarize(std::vector<double> samples);

/// Times `n_repeats` calls of bench.solve. Throws InvalidArgument for n < 1.
BenchReport run_benchmark(const BenchCase& bench, std::size_t n_repeats);

/// Aligned text with a Relative column (median / fastest median).
std::string render_bench_table(const std::vector<BenchReport>& reports);

/// `scheme,n,median_s,mean_s,std_s,bytes,relative` with a header row.
std::string render_bench_csv(const std::vector<BenchReport>& reports);

}  // namespace schemeforge
