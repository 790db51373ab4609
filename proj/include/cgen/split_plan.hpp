#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace cgen {

/// A binary tree over the ground-set positions [0, N) that fixes how the
/// divide-and-conquer generators split their input.
///
/// The tree always reaches ranges of size <= 1. The threshold marks
/// subtrees that run as one serial task: kcombs switches to the sequential
/// generator there, the other generators keep recursing serially.
class SplitPlan {
 public:
  struct Node {
    std::size_t begin = 0;
    std::size_t end = 0;
    int left = -1;
    int right = -1;

    std::size_t size() const { return end - begin; }
    bool is_leaf() const { return left < 0; }
  };

  static constexpr std::size_t kDefaultThreshold = 64;

  /// Left child takes floor(n/2) positions.
  static SplitPlan midpoint(std::size_t n, std::size_t threshold = 1);
  /// Left child takes one position, the right child the rest.
  static SplitPlan one_rest(std::size_t n, std::size_t threshold = 1);
  /// Left size drawn uniformly from [1, n-1] by a seeded mt19937_64.
  static SplitPlan random(std::size_t n, std::uint64_t seed, std::size_t threshold = 1);
  /// Nested pairs of leaf sizes, e.g. "(1,(1,1))". Leaves wider than one
  /// position are refined by midpoint splits.
  static SplitPlan parse(std::string_view tree, std::size_t threshold = 1);

  std::size_t ground_size() const { return nodes_.front().size(); }
  std::size_t threshold() const { return threshold_; }
  std::size_t root() const { return 0; }
  std::size_t node_count() const { return nodes_.size(); }
  const Node& node(std::size_t i) const { return nodes_[i]; }
  const std::vector<Node>& nodes() const { return nodes_; }

  /// True for leaves and for subtrees no wider than the threshold.
  bool runs_sequentially(std::size_t i) const {
    return nodes_[i].is_leaf() || nodes_[i].size() <= threshold_;
  }

  /// Children before parents, left subtree before right subtree.
  std::vector<std::size_t> post_order() const;
  std::vector<std::size_t> post_order(std::size_t subtree) const;

  /// Same tree with another threshold.
  SplitPlan with_threshold(std::size_t threshold) const;

  /// Tree rendered in the parse() syntax, down to single positions.
  std::string describe() const;

 private:
  SplitPlan() = default;
  using Chooser = std::function<std::size_t(std::size_t)>;
  static SplitPlan build(std::size_t n, std::size_t threshold, const Chooser& left_size);
  int grow(std::size_t begin, std::size_t end, const Chooser& left_size);

  std::vector<Node> nodes_;
  std::size_t threshold_ = 1;
};

}  // namespace cgen
