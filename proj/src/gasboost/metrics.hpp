#pragma once

#include <vector>

#include <Eigen/Core>

namespace gasboost {

double accuracy(const std::vector<int>& predicted,
                const std::vector<int>& truth);

struct ConfusionMatrix {
  Eigen::MatrixXi counts;  // rows = true class, columns = predicted class

  ConfusionMatrix() = default;
  explicit ConfusionMatrix(int n_classes)
      : counts(Eigen::MatrixXi::Zero(n_classes, n_classes)) {}

  int total() const { return counts.sum(); }
  int diagonal() const { return counts.diagonal().sum(); }
};

ConfusionMatrix confusion(const std::vector<int>& predicted,
                          const std::vector<int>& truth, int n_classes);

}  // namespace gasboost
