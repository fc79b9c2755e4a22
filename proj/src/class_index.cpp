#include "kdda/class_index.hpp"

#include <algorithm>
#include <string>

namespace kdda {

ClassIndex ClassIndex::from_labels(const std::vector<int>& labels) {
  if (labels.empty()) throw InvalidInput("class index: no labels");
  const int c_max = *std::max_element(labels.begin(), labels.end());
  if (c_max < 1) throw InvalidInput("class index: labels must start at 1");

  ClassIndex idx;
  idx.labels_ = labels;
  idx.class_sizes_.assign(static_cast<std::size_t>(c_max), 0);
  for (int label : labels) {
    if (label < 1 || label > c_max)
      throw InvalidInput("class index: label out of range: " +
                         std::to_string(label));
    ++idx.class_sizes_[static_cast<std::size_t>(label - 1)];
  }
  for (std::size_t c = 0; c < idx.class_sizes_.size(); ++c)
    if (idx.class_sizes_[c] == 0)
      throw InvalidInput("class index: class " + std::to_string(c + 1) +
                         " has no samples");
  return idx;
}

std::vector<std::size_t> ClassIndex::members(int c) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == c) out.push_back(i);
  return out;
}

}  // namespace kdda
