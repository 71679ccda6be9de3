#include "gasboost/metrics.hpp"

#include "gasboost/common.hpp"

namespace gasboost {

double accuracy(const std::vector<int>& predicted,
                const std::vector<int>& truth) {
  if (predicted.size() != truth.size())
    throw Error("accuracy: prediction count " + std::to_string(predicted.size()) +
                " does not match truth count " + std::to_string(truth.size()));
  if (predicted.empty()) throw Error("accuracy: empty inputs");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < predicted.size(); ++i)
    if (predicted[i] == truth[i]) ++hits;
  return static_cast<double>(hits) / static_cast<double>(predicted.size());
}

ConfusionMatrix confusion(const std::vector<int>& predicted,
                          const std::vector<int>& truth, int n_classes) {
  if (predicted.size() != truth.size())
    throw Error("confusion: prediction count does not match truth count");
  ConfusionMatrix cm(n_classes);
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    if (truth[i] < 0 || truth[i] >= n_classes || predicted[i] < 0 ||
        predicted[i] >= n_classes)
      throw Error("confusion: label outside 0.." + std::to_string(n_classes - 1));
    cm.counts(truth[i], predicted[i]) += 1;
  }
  return cm;
}

}  // namespace gasboost
