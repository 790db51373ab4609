#include "cgen/split_plan.hpp"

#include <random>

#include "cgen/errors.hpp"

namespace cgen {

namespace {

void require_threshold(std::size_t threshold) {
  if (threshold == 0) throw PreconditionError("split threshold must be at least 1");
}

std::size_t midpoint_left(std::size_t n) { return n / 2; }

}  // namespace

int SplitPlan::grow(std::size_t begin, std::size_t end, const Chooser& left_size) {
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back(Node{begin, end, -1, -1});
  const std::size_t n = end - begin;
  if (n <= 1) return id;
  const std::size_t l = left_size(n);
  if (l == 0 || l >= n) throw PreconditionError("split must leave both halves non-empty");
  const int left = grow(begin, begin + l, left_size);
  const int right = grow(begin + l, end, left_size);
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

SplitPlan SplitPlan::build(std::size_t n, std::size_t threshold, const Chooser& left_size) {
  require_threshold(threshold);
  SplitPlan plan;
  plan.threshold_ = threshold;
  plan.nodes_.reserve(n == 0 ? 1 : 2 * n - 1);
  plan.grow(0, n, left_size);
  return plan;
}

SplitPlan SplitPlan::midpoint(std::size_t n, std::size_t threshold) {
  return build(n, threshold, midpoint_left);
}

SplitPlan SplitPlan::one_rest(std::size_t n, std::size_t threshold) {
  return build(n, threshold, [](std::size_t) { return std::size_t{1}; });
}

SplitPlan SplitPlan::random(std::size_t n, std::uint64_t seed, std::size_t threshold) {
  std::mt19937_64 rng(seed);
  return build(n, threshold, [&rng](std::size_t m) {
    std::uniform_int_distribution<std::size_t> dist(1, m - 1);
    return dist(rng);
  });
}

namespace {

// Recursive-descent parser for  tree := size | '(' tree ',' tree ')'
struct TreeParser {
  std::string_view text;
  std::size_t pos = 0;

  struct Shape {
    std::size_t size = 0;
    std::vector<Shape> kids;
  };

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw PreconditionError("bad split tree at offset " + std::to_string(pos) + ": " + why);
  }

  Shape parse_tree() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end");
    if (text[pos] == '(') {
      ++pos;
      Shape s;
      s.kids.push_back(parse_tree());
      skip_ws();
      if (pos >= text.size() || text[pos] != ',') fail("expected ','");
      ++pos;
      s.kids.push_back(parse_tree());
      skip_ws();
      if (pos >= text.size() || text[pos] != ')') fail("expected ')'");
      ++pos;
      if (s.kids[0].size == 0 || s.kids[1].size == 0) fail("empty half");
      s.size = s.kids[0].size + s.kids[1].size;
      return s;
    }
    std::size_t start = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    if (start == pos) fail("expected a leaf size or '('");
    Shape s;
    s.size = std::stoull(std::string(text.substr(start, pos - start)));
    return s;
  }
};

}  // namespace

SplitPlan SplitPlan::parse(std::string_view tree, std::size_t threshold) {
  require_threshold(threshold);
  TreeParser p{tree};
  auto shape = p.parse_tree();
  p.skip_ws();
  if (p.pos != tree.size()) p.fail("trailing characters");

  SplitPlan plan;
  plan.threshold_ = threshold;
  std::function<int(const TreeParser::Shape&, std::size_t)> emit =
      [&](const TreeParser::Shape& s, std::size_t begin) -> int {
    if (s.kids.empty()) return plan.grow(begin, begin + s.size, midpoint_left);
    const int id = static_cast<int>(plan.nodes_.size());
    plan.nodes_.push_back(Node{begin, begin + s.size, -1, -1});
    const int l = emit(s.kids[0], begin);
    const int r = emit(s.kids[1], begin + s.kids[0].size);
    plan.nodes_[id].left = l;
    plan.nodes_[id].right = r;
    return id;
  };
  emit(shape, 0);
  return plan;
}

std::vector<std::size_t> SplitPlan::post_order(std::size_t subtree) const {
  std::vector<std::size_t> order;
  std::vector<std::pair<std::size_t, bool>> stack{{subtree, false}};
  while (!stack.empty()) {
    auto [id, expanded] = stack.back();
    stack.pop_back();
    const Node& n = nodes_[id];
    if (expanded || n.is_leaf()) {
      order.push_back(id);
      continue;
    }
    stack.push_back({id, true});
    stack.push_back({static_cast<std::size_t>(n.right), false});
    stack.push_back({static_cast<std::size_t>(n.left), false});
  }
  return order;
}

std::vector<std::size_t> SplitPlan::post_order() const { return post_order(root()); }

SplitPlan SplitPlan::with_threshold(std::size_t threshold) const {
  require_threshold(threshold);
  SplitPlan p = *this;
  p.threshold_ = threshold;
  return p;
}

std::string SplitPlan::describe() const {
  std::function<std::string(std::size_t)> go = [&](std::size_t id) -> std::string {
    const Node& n = nodes_[id];
    if (n.is_leaf()) return std::to_string(n.size());
    return "(" + go(static_cast<std::size_t>(n.left)) + "," +
           go(static_cast<std::size_t>(n.right)) + ")";
  };
  return go(root());
}

}  // namespace cgen
