#include "spe/decision_tree.hpp"

#include <algorithm>
#include <numeric>

#include "spe/errors.hpp"

namespace spe {

namespace {

// Splits whose impurity gain falls below this are treated as rounding noise.
constexpr double kMinGain = 1e-14;

struct SplitCandidate {
  int feature = -1;
  double threshold = 0.0;
  double child_impurity = 0.0;  // weighted mean Gini of the two children
};

class TreeBuilder {
public:
  TreeBuilder(const Dataset& data, std::span<const double> weights,
              const DecisionTreeParams& params)
      : data_(data), weights_(weights), params_(params) {
    total_weight_ = 0.0;
    for (std::size_t i = 0; i < data.n_rows(); ++i) total_weight_ += weight(i);
  }

  std::vector<DecisionTree::Node> build() {
    IndexList rows(data_.n_rows());
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    grow(rows, 0);
    return std::move(nodes_);
  }

private:
  double weight(std::size_t i) const { return weights_.empty() ? 1.0 : weights_[i]; }

  int grow(IndexList& rows, int depth) {
    double w_pos = 0.0, w_neg = 0.0;
    for (std::size_t r : rows) (data_.label(r) ? w_pos : w_neg) += weight(r);
    const double w = w_pos + w_neg;

    const int id = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    nodes_[id].samples = rows.size();
    nodes_[id].probability = w > 0.0 ? w_pos / w : 0.0;

    const double impurity = gini(w_pos, w_neg);
    if (depth >= params_.max_depth || rows.size() < params_.min_samples_split ||
        impurity <= 0.0 || w <= 0.0)
      return id;

    const auto split = best_split(rows, w);
    if (split.feature < 0) return id;
    const double gain = impurity - split.child_impurity;
    if (gain <= kMinGain || (w / total_weight_) * gain < params_.min_impurity_decrease) return id;

    IndexList left, right;
    for (std::size_t r : rows)
      (data_.at(r, split.feature) <= split.threshold ? left : right).push_back(r);
    if (left.empty() || right.empty()) return id;
    rows.clear();
    rows.shrink_to_fit();

    nodes_[id].feature = split.feature;
    nodes_[id].threshold = split.threshold;
    const int l = grow(left, depth + 1);
    const int r = grow(right, depth + 1);
    nodes_[id].left = l;
    nodes_[id].right = r;
    return id;
  }

  SplitCandidate best_split(const IndexList& rows, double w) const {
    SplitCandidate best;
    best.child_impurity = std::numeric_limits<double>::infinity();
    IndexList order(rows);
    for (std::size_t f = 0; f < data_.n_features(); ++f) {
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return data_.at(a, f) < data_.at(b, f);
      });
      double lp = 0.0, ln = 0.0, tp = 0.0, tn = 0.0;
      for (std::size_t r : order) (data_.label(r) ? tp : tn) += weight(r);
      for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        const std::size_t r = order[i];
        (data_.label(r) ? lp : ln) += weight(r);
        const double v = data_.at(r, f);
        const double next = data_.at(order[i + 1], f);
        if (!(v < next)) continue;
        const double rp = tp - lp, rn = tn - ln;
        const double wl = lp + ln, wr = rp + rn;
        const double child = (wl * gini(lp, ln) + wr * gini(rp, rn)) / w;
        if (child < best.child_impurity) {
          double mid = v + (next - v) / 2.0;
          if (!(mid < next)) mid = v;
          best = {static_cast<int>(f), mid, child};
        }
      }
    }
    return best;
  }

  const Dataset& data_;
  std::span<const double> weights_;
  const DecisionTreeParams& params_;
  double total_weight_;
  std::vector<DecisionTree::Node> nodes_;
};

}  // namespace

void DecisionTreeParams::validate() const {
  if (max_depth < 1) throw ParameterError("max_depth must be >= 1");
  if (min_samples_split < 1) throw ParameterError("min_samples_split must be >= 1");
  if (!(min_impurity_decrease >= 0.0))
    throw ParameterError("min_impurity_decrease must be nonnegative");
}

double gini(double weight_pos, double weight_neg) {
  const double w = weight_pos + weight_neg;
  if (w <= 0.0) return 0.0;
  return 2.0 * (weight_pos / w) * (weight_neg / w);
}

DecisionTree::DecisionTree(std::vector<Node> nodes, std::size_t n_features)
    : nodes_(std::move(nodes)), n_features_(n_features) {
  if (nodes_.empty()) throw InvalidModelError("tree has no nodes");
  const int n = static_cast<int>(nodes_.size());
  for (int i = 0; i < n; ++i) {
    const Node& node = nodes_[i];
    if (node.is_leaf()) {
      if (!(node.probability >= 0.0 && node.probability <= 1.0))
        throw InvalidModelError("leaf probability outside [0, 1]");
    } else {
      if (static_cast<std::size_t>(node.feature) >= n_features_)
        throw InvalidModelError("split feature index out of range");
      // Children always follow their parent, which rules out cycles.
      if (node.left <= i || node.left >= n || node.right <= i || node.right >= n)
        throw InvalidModelError("invalid child index at node " + std::to_string(i));
    }
  }
}

DecisionTree DecisionTree::fit(const Dataset& data, std::span<const double> weights,
                               const DecisionTreeParams& params) {
  params.validate();
  if (data.empty()) throw InvalidInputError("cannot fit a tree on an empty dataset");
  if (!weights.empty()) {
    if (weights.size() != data.n_rows())
      throw InvalidInputError("sample weights do not align with rows");
    double sum = 0.0;
    for (double w : weights) {
      if (!(w >= 0.0)) throw InvalidInputError("sample weights must be nonnegative");
      sum += w;
    }
    if (!(sum > 0.0)) throw InvalidInputError("sample weights sum to zero");
  }
  TreeBuilder builder(data, weights, params);
  return DecisionTree(builder.build(), data.n_features());
}

double DecisionTree::predict_proba(std::span<const double> x) const {
  check_arity(x.size());
  const Node* node = &nodes_.front();
  while (!node->is_leaf())
    node = &nodes_[x[node->feature] <= node->threshold ? node->left : node->right];
  return node->probability;
}

int DecisionTree::depth() const {
  std::vector<int> d(nodes_.size(), 0);
  int deepest = 0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    deepest = std::max(deepest, d[i]);
    if (!nodes_[i].is_leaf()) d[nodes_[i].left] = d[nodes_[i].right] = d[i] + 1;
  }
  return deepest;
}

Json DecisionTree::to_json() const {
  Json nodes = Json::array();
  for (const Node& n : nodes_) {
    if (n.is_leaf())
      nodes.push_back({{"probability", n.probability}, {"samples", n.samples}});
    else
      nodes.push_back({{"feature", n.feature},
                       {"threshold", n.threshold},
                       {"left", n.left},
                       {"right", n.right},
                       {"samples", n.samples}});
  }
  return {{"kind", "tree"}, {"n_features", n_features_}, {"nodes", std::move(nodes)}};
}

DecisionTree DecisionTree::from_json(const Json& doc) {
  try {
    if (doc.at("kind").get<std::string>() != "tree") throw InvalidModelError("not a tree document");
    std::vector<Node> nodes;
    for (const auto& j : doc.at("nodes")) {
      Node n;
      n.samples = j.value("samples", std::size_t{0});
      if (j.contains("feature")) {
        n.feature = j.at("feature").get<int>();
        if (n.feature < 0) throw InvalidModelError("negative split feature");
        n.threshold = j.at("threshold").get<double>();
        n.left = j.at("left").get<int>();
        n.right = j.at("right").get<int>();
      } else {
        n.probability = j.at("probability").get<double>();
      }
      nodes.push_back(n);
    }
    return DecisionTree(std::move(nodes), doc.at("n_features").get<std::size_t>());
  } catch (const Json::exception& e) {
    throw InvalidModelError(std::string("malformed tree document: ") + e.what());
  }
}

TreeLearner::TreeLearner(DecisionTreeParams params) : params_(params) { params_.validate(); }

ClassifierPtr TreeLearner::fit(const Dataset& data, RandomSource) const {
  return std::make_shared<DecisionTree>(DecisionTree::fit(data, params_));
}

Json TreeLearner::params() const {
  return {{"max_depth", params_.max_depth},
          {"min_samples_split", params_.min_samples_split},
          {"min_impurity_decrease", params_.min_impurity_decrease}};
}

}  // namespace spe
