#include "adastream/metrics.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "adastream/csv.h"
#include "adastream/errors.h"

namespace adastream {

double relative_error(std::span<const double> predicted, std::span<const double> truth) {
  if (predicted.size() != truth.size()) {
    throw ArgumentError("relative error: predicted and truth lengths differ");
  }
  if (predicted.empty()) throw ArgumentError("relative error: empty input");
  double sum = 0.0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    if (!(predicted[i] > 0.0) || !(truth[i] > 0.0)) {
      throw ArgumentError("relative error: values must be positive");
    }
    sum += std::abs(std::log(predicted[i]) - std::log(truth[i]));
  }
  return std::expm1(sum / static_cast<double>(predicted.size())) * 100.0;
}

ConfusionMatrix confusion_matrix(std::span<const int> predicted, std::span<const int> truth,
                                 std::span<const int> classes) {
  if (predicted.size() != truth.size()) {
    throw ArgumentError("confusion matrix: predicted and truth lengths differ");
  }
  std::map<int, std::size_t> index;
  for (std::size_t i = 0; i < classes.size(); ++i) index.emplace(classes[i], i);
  auto lookup = [&](int v) {
    auto it = index.find(v);
    if (it == index.end()) {
      throw ArgumentError("confusion matrix: value " + std::to_string(v) + " is not a class");
    }
    return it->second;
  };

  ConfusionMatrix m;
  m.classes.assign(classes.begin(), classes.end());
  const std::size_t n = classes.size();
  m.rows.assign(n, std::vector<double>(n, 0.0));
  m.support.assign(n, 0);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const std::size_t t = lookup(truth[i]);
    const std::size_t p = lookup(predicted[i]);
    m.rows[t][p] += 1.0;
    ++m.support[t];
  }
  for (std::size_t t = 0; t < n; ++t) {
    if (m.support[t] == 0) continue;
    for (double& v : m.rows[t]) v /= static_cast<double>(m.support[t]);
  }
  return m;
}

void write_confusion_csv(std::ostream& out, const ConfusionMatrix& matrix) {
  out << "truth\\predicted";
  for (int c : matrix.classes) out << ',' << c;
  out << '\n';
  for (std::size_t t = 0; t < matrix.classes.size(); ++t) {
    out << matrix.classes[t];
    for (double v : matrix.rows[t]) out << ',' << format_double(v);
    out << '\n';
  }
}

int majority_class(std::span<const int> values) {
  if (values.empty()) throw ArgumentError("majority class of an empty set");
  std::map<int, std::size_t> counts;
  for (int v : values) ++counts[v];
  int best = counts.begin()->first;
  std::size_t best_count = 0;
  for (const auto& [v, c] : counts) {
    if (c > best_count) {
      best = v;
      best_count = c;
    }
  }
  return best;
}

}  // namespace adastream
