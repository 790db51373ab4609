#include "cgen/ground_set.hpp"

#include <numeric>
#include <sstream>

namespace cgen {

GroundSet::GroundSet(std::vector<Label> labels) : labels_(std::move(labels)) {
  require_distinct<Label>(labels_);
}

GroundSet GroundSet::iota(std::size_t n) {
  std::vector<Label> labels(n);
  std::iota(labels.begin(), labels.end(), Label{1});
  return GroundSet(std::move(labels));
}

GroundSet GroundSet::parse(const std::string& csv) {
  std::vector<Label> labels;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    Label v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      throw PreconditionError("not an integer element: '" + item + "'");
    }
    if (used != item.size()) throw PreconditionError("not an integer element: '" + item + "'");
    labels.push_back(v);
  }
  return GroundSet(std::move(labels));
}

}  // namespace cgen
