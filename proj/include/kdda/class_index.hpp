#pragma once

#include <cstddef>
#include <vector>

#include "kdda/errors.hpp"

namespace kdda {

/// Per-sample class labels in 1..C with per-class bookkeeping. Every class
/// in the range is nonempty.
class ClassIndex {
 public:
  /// Validates that labels cover a contiguous 1..C range. Throws
  /// InvalidInput on an empty label list, labels outside the range, or a
  /// class with no samples.
  static ClassIndex from_labels(const std::vector<int>& labels);

  const std::vector<int>& labels() const { return labels_; }
  const std::vector<std::size_t>& class_sizes() const { return class_sizes_; }
  std::size_t total() const { return labels_.size(); }
  int num_classes() const { return static_cast<int>(class_sizes_.size()); }

  /// Sample positions belonging to class c (1-based), in dataset order.
  std::vector<std::size_t> members(int c) const;

 private:
  std::vector<int> labels_;
  std::vector<std::size_t> class_sizes_;
};

}  // namespace kdda
