#ifndef ADASTREAM_METRICS_H_
#define ADASTREAM_METRICS_H_

#include <ostream>
#include <span>
#include <vector>

namespace adastream {

// Relative error of predicted class values (Hz or lines) against the truth:
//   E = (exp(mean_i |ln predicted_i − ln truth_i|) − 1) · 100
// Throws ArgumentError on length mismatch, empty input or nonpositive values.
double relative_error(std::span<const double> predicted, std::span<const double> truth);

struct ConfusionMatrix {
  std::vector<int> classes;
  // rows[t][p]: share of truth class t predicted as class p. A class absent
  // from the truth yields an all-zero row.
  std::vector<std::vector<double>> rows;
  std::vector<std::size_t> support;  // truth count per class
};

// Throws ArgumentError for values not among classes or mismatched lengths.
ConfusionMatrix confusion_matrix(std::span<const int> predicted, std::span<const int> truth,
                                 std::span<const int> classes);

// Header "truth\predicted,<classes...>", one row per truth class.
void write_confusion_csv(std::ostream& out, const ConfusionMatrix& matrix);

// Most frequent value; ties go to the smallest.
int majority_class(std::span<const int> values);

}  // namespace adastream

#endif  // ADASTREAM_METRICS_H_
