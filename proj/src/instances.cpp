// Copyright 2026 The Duelbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "duelbench/instances.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace duelbench {

RankingValuation RankingValuation::linear(double c, double d) {
  if (!(c >= 0.0) || !(d >= 0.0)) {
    throw std::invalid_argument("linear valuations need c, d >= 0");
  }
  RankingValuation v;
  v.is_linear = true;
  v.c = c;
  v.d = d;
  return v;
}

RankingValuation RankingValuation::explicit_values(std::vector<double> values) {
  for (double f : values) {
    if (!std::isfinite(f) || f < 0.0) {
      throw std::invalid_argument("valuations must be finite and nonnegative");
    }
  }
  RankingValuation v;
  v.values = std::move(values);
  return v;
}

std::vector<double> RankingValuation::by_rank(int n) const {
  if (is_linear) {
    std::vector<double> f(n);
    for (int r = 0; r < n; ++r) f[r] = c * (n - 1 - r) + d;
    return f;
  }
  if (static_cast<int>(values.size()) != n) {
    throw std::invalid_argument("explicit valuation length must equal n");
  }
  return values;
}

RankingSpec::RankingSpec(std::vector<double> probabilities,
                         RankingValuation valuation, Mode mode)
    : valuation_(std::move(valuation)), mode_(mode) {
  const int n = static_cast<int>(probabilities.size());
  if (n < 1) throw std::invalid_argument("a ranking duel needs at least one page");
  sort_order_.resize(n);
  std::iota(sort_order_.begin(), sort_order_.end(), 0);
  std::stable_sort(sort_order_.begin(), sort_order_.end(),
                   [&](int a, int b) { return probabilities[a] > probabilities[b]; });
  p_.resize(n);
  for (int i = 0; i < n; ++i) p_[i] = probabilities[sort_order_[i]];
  f_ = valuation_.by_rank(n);
}

bool RankingSpec::strictly_decreasing_f() const {
  for (size_t i = 1; i < f_.size(); ++i) {
    if (!(f_[i - 1] > f_[i])) return false;
  }
  return true;
}

bool RankingSpec::strictly_increasing_f() const {
  for (size_t i = 1; i < f_.size(); ++i) {
    if (!(f_[i - 1] < f_[i])) return false;
  }
  return true;
}

int RankingDuel::rank_of(int strategy, int page) const {
  const std::vector<int>& order = catalog[strategy];
  for (int pos = 0; pos < static_cast<int>(order.size()); ++pos) {
    if (order[pos] == page) return pos + 1;
  }
  throw std::invalid_argument("page not present in permutation");
}

RankingDuel ranking_duel(const RankingSpec& spec, int cap) {
  const int n = spec.n();
  if (n > cap) {
    std::ostringstream os;
    os << "ranking duel with n=" << n << " exceeds the enumeration cap of "
       << cap << " (" << cap << "! pure strategies); use the marginal path";
    throw CapExceeded(os.str());
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::vector<int>> catalog;
  std::vector<double> values;
  std::vector<std::string> labels;
  const std::vector<double>& f = spec.f();
  do {
    catalog.push_back(order);
    std::ostringstream os;
    os << "(";
    for (int pos = 0; pos < n; ++pos) {
      os << (pos ? "," : "") << order[pos] + 1;
    }
    os << ")";
    labels.push_back(os.str());
    std::vector<double> row(n);
    for (int pos = 0; pos < n; ++pos) row[order[pos]] = f[pos];
    values.insert(values.end(), row.begin(), row.end());
  } while (std::next_permutation(order.begin(), order.end()));

  DuelInstance game(spec.probabilities(), static_cast<int>(catalog.size()),
                    std::move(values), spec.mode(), std::move(labels));
  return RankingDuel{spec, std::move(game), std::move(catalog)};
}

std::vector<double> position_marginals(const RankingDuel& duel,
                                       const MixedStrategy& x) {
  const int n = duel.spec.n();
  std::vector<double> q(static_cast<size_t>(n) * n, 0.0);
  for (int s = 0; s < static_cast<int>(duel.catalog.size()); ++s) {
    double w = x.weight(s);
    if (w == 0.0) continue;
    const std::vector<int>& order = duel.catalog[s];
    for (int pos = 0; pos < n; ++pos) {
      q[static_cast<size_t>(order[pos]) * n + pos] += w;
    }
  }
  return q;
}

double pr_before(const RankingDuel& duel, const MixedStrategy& x, int a, int b) {
  double pr = 0.0;
  for (int s = 0; s < static_cast<int>(duel.catalog.size()); ++s) {
    double w = x.weight(s);
    if (w == 0.0) continue;
    if (duel.rank_of(s, a) < duel.rank_of(s, b)) pr += w;
  }
  return pr;
}

// ---------------------------------------------------------------------------
// Trees
// ---------------------------------------------------------------------------

int LeafTree::depth_of_label(int label) const {
  struct Item { int node; int depth; };
  std::vector<Item> stack{{root, 1}};
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    const Node& nd = nodes[it.node];
    if (nd.label == label) return it.depth;
    if (nd.left >= 0) stack.push_back({nd.left, it.depth + 1});
    if (nd.right >= 0) stack.push_back({nd.right, it.depth + 1});
  }
  throw std::invalid_argument("label not present in tree");
}

std::vector<int> LeafTree::depths(int n) const {
  std::vector<int> out(n, -1);
  struct Item { int node; int depth; };
  if (root < 0) return out;
  std::vector<Item> stack{{root, 1}};
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    const Node& nd = nodes[it.node];
    if (nd.label >= 0) {
      if (nd.label < n) out[nd.label] = it.depth;
    }
    if (nd.left >= 0) stack.push_back({nd.left, it.depth + 1});
    if (nd.right >= 0) stack.push_back({nd.right, it.depth + 1});
  }
  for (int i = 0; i < n; ++i) {
    if (out[i] < 0) throw std::invalid_argument("tree is missing a label");
  }
  return out;
}

bool LeafTree::full_binary() const {
  for (const Node& nd : nodes) {
    if ((nd.left >= 0) != (nd.right >= 0)) return false;
  }
  return true;
}

namespace {
// Leaves print their 1-based label; labeled internals print
// "(left,label,right)" with "." for an absent side; unlabeled internals
// print "(left,right)".
void render(const LeafTree& t, int node, std::ostringstream& os) {
  const LeafTree::Node& nd = t.nodes[node];
  if (nd.left < 0 && nd.right < 0) {
    os << nd.label + 1;
    return;
  }
  os << "(";
  if (nd.left >= 0) render(t, nd.left, os);
  else if (nd.label >= 0) os << ".";
  if (nd.label >= 0) os << "," << nd.label + 1 << ",";
  else os << ",";
  if (nd.right >= 0) render(t, nd.right, os);
  else if (nd.label >= 0) os << ".";
  os << ")";
}
}  // namespace

std::string LeafTree::to_string() const {
  if (root < 0) return "()";
  std::ostringstream os;
  render(*this, root, os);
  return os.str();
}

std::uint64_t catalan_number(int n) {
  if (n < 0 || n > 33) {
    throw std::invalid_argument("catalan_number supports 0 <= n <= 33");
  }
  // C_0 = 1, C_{k+1} = C_k * 2(2k+1)/(k+2); exact in 64-bit for n <= 33.
  std::uint64_t c = 1;
  for (int k = 0; k < n; ++k) {
    c = c * 2 * (2 * static_cast<std::uint64_t>(k) + 1) / (k + 2);
  }
  return c;
}

namespace {

// Every BST over [lo, hi], encoded as root keys in pre-order interval order.
std::vector<std::vector<int>> bst_encodings(int lo, int hi) {
  std::vector<std::vector<int>> out;
  if (lo > hi) {
    out.push_back({});
    return out;
  }
  for (int r = lo; r <= hi; ++r) {
    std::vector<std::vector<int>> lefts = bst_encodings(lo, r - 1);
    std::vector<std::vector<int>> rights = bst_encodings(r + 1, hi);
    for (const auto& left : lefts) {
      for (const auto& right : rights) {
        std::vector<int> enc;
        enc.reserve(1 + left.size() + right.size());
        enc.push_back(r);
        enc.insert(enc.end(), left.begin(), left.end());
        enc.insert(enc.end(), right.begin(), right.end());
        out.push_back(std::move(enc));
      }
    }
  }
  return out;
}

// Decodes a pre-order interval encoding back into a tree.
int decode_bst(int lo, int hi, const std::vector<int>& enc, size_t& cursor,
               LeafTree& tree) {
  if (lo > hi) return -1;
  int key = enc[cursor++];
  int me = static_cast<int>(tree.nodes.size());
  tree.nodes.push_back({-1, -1, key});
  int left = decode_bst(lo, key - 1, enc, cursor, tree);
  int right = decode_bst(key + 1, hi, enc, cursor, tree);
  tree.nodes[me].left = left;
  tree.nodes[me].right = right;
  return me;
}

}  // namespace

std::vector<LeafTree> enumerate_bsts(int n) {
  if (n < 1) throw std::invalid_argument("enumerate_bsts needs n >= 1");
  if (n > 13 || catalan_number(n) > 1000000ULL) {
    std::ostringstream os;
    os << "enumerate_bsts refuses n=" << n
       << ": the catalog cap is 1e6 trees (n <= 13)";
    throw CapExceeded(os.str());
  }
  std::vector<std::vector<int>> encodings = bst_encodings(0, n - 1);
  std::vector<LeafTree> out;
  out.reserve(encodings.size());
  for (const auto& enc : encodings) {
    LeafTree t;
    size_t cursor = 0;
    t.root = decode_bst(0, n - 1, enc, cursor, t);
    out.push_back(std::move(t));
  }
  return out;
}

namespace {

// All ordered full-binary shapes with n leaf slots labeled 0..n-1 in
// left-to-right order.
std::vector<LeafTree> leaf_shapes(int n) {
  std::vector<LeafTree> out;
  if (n == 1) {
    LeafTree t;
    t.nodes.push_back({-1, -1, 0});
    t.root = 0;
    out.push_back(std::move(t));
    return out;
  }
  for (int l = 1; l < n; ++l) {
    std::vector<LeafTree> lefts = leaf_shapes(l);
    std::vector<LeafTree> rights = leaf_shapes(n - l);
    for (const LeafTree& L : lefts) {
      for (const LeafTree& R : rights) {
        LeafTree t;
        t.nodes = L.nodes;
        int offset = static_cast<int>(t.nodes.size());
        for (LeafTree::Node nd : R.nodes) {
          if (nd.left >= 0) nd.left += offset;
          if (nd.right >= 0) nd.right += offset;
          if (nd.label >= 0) nd.label += l;  // shift right slot labels
          t.nodes.push_back(nd);
        }
        int lroot = L.root;
        int rroot = R.root + offset;
        t.nodes.push_back({lroot, rroot, -1});
        t.root = static_cast<int>(t.nodes.size()) - 1;
        out.push_back(std::move(t));
      }
    }
  }
  return out;
}

}  // namespace

std::vector<LeafTree> enumerate_leaf_trees(int n) {
  if (n < 1) throw std::invalid_argument("enumerate_leaf_trees needs n >= 1");
  if (n > 7) {
    std::ostringstream os;
    os << "enumerate_leaf_trees refuses n=" << n
       << ": the catalog cap is 1e6 strategies (n <= 7)";
    throw CapExceeded(os.str());
  }
  std::vector<LeafTree> shapes = leaf_shapes(n);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<LeafTree> out;
  out.reserve(shapes.size() * 5040);
  do {
    for (const LeafTree& shape : shapes) {
      LeafTree t = shape;
      for (LeafTree::Node& nd : t.nodes) {
        if (nd.left < 0 && nd.right < 0) nd.label = perm[nd.label];
      }
      out.push_back(std::move(t));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

CompressionDuel compression_duel_epsilon(double epsilon) {
  if (!(epsilon > 0.0) || !(epsilon <= 1.0)) {
    throw std::invalid_argument("compression construction needs 0 < epsilon <= 1");
  }
  const int n = 4;
  auto value_of_depth = [epsilon](int d) {
    if (d <= 2) return 1.0;
    if (d == 3) return epsilon / 16.0;
    return 0.0;
  };
  std::vector<LeafTree> catalog = enumerate_leaf_trees(n);
  std::vector<double> values;
  std::vector<std::string> labels;
  values.reserve(catalog.size() * n);
  for (const LeafTree& t : catalog) {
    std::vector<int> d = t.depths(n);
    for (int w = 0; w < n; ++w) values.push_back(value_of_depth(d[w]));
    labels.push_back(t.to_string());
  }
  DuelInstance game(std::vector<double>(n, 0.25),
                    static_cast<int>(catalog.size()), std::move(values),
                    Mode::kWelfare, std::move(labels));

  // Caterpillar: request 4 at depth 2, request 3 at depth 3, 1 and 2 at 4.
  LeafTree opt;
  opt.nodes = {{-1, -1, 0},          // 0: leaf 1
               {-1, -1, 1},          // 1: leaf 2
               {0, 1, -1},           // 2
               {-1, -1, 2},          // 3: leaf 3
               {2, 3, -1},           // 4
               {-1, -1, 3},          // 5: leaf 4
               {4, 5, -1}};          // 6: root
  opt.root = 6;

  LeafTree xstar;
  xstar.nodes = {{-1, -1, 0}, {-1, -1, 1}, {0, 1, -1},
                 {-1, -1, 2}, {-1, -1, 3}, {3, 4, -1},
                 {2, 5, -1}};
  xstar.root = 6;

  auto find_by_depths = [&](const LeafTree& t) {
    std::vector<int> want = t.depths(n);
    for (size_t s = 0; s < catalog.size(); ++s) {
      if (catalog[s].depths(n) == want) return static_cast<int>(s);
    }
    throw std::logic_error("designated tree missing from catalog");
  };
  const int opt_index = find_by_depths(opt);
  const int xstar_index = find_by_depths(xstar);

  return CompressionDuel{epsilon,    std::move(game), std::move(catalog),
                         opt,        xstar,           opt_index,
                         xstar_index};
}

namespace {

// Perfect BST over keys [lo, hi]; size must be 2^h - 1.
int perfect_bst(long long lo, long long hi, LeafTree& tree) {
  if (lo > hi) return -1;
  long long mid = lo + (hi - lo) / 2;
  int me = static_cast<int>(tree.nodes.size());
  tree.nodes.push_back({-1, -1, static_cast<int>(mid)});
  int left = perfect_bst(lo, mid - 1, tree);
  int right = perfect_bst(mid + 1, hi, tree);
  tree.nodes[me].left = left;
  tree.nodes[me].right = right;
  return me;
}

}  // namespace

BstDuel::BstDuel(double beta, double epsilon) : beta_(beta), epsilon_(epsilon) {
  if (!(beta > 0.0) || !(beta < 1.0)) {
    throw std::invalid_argument("binary-search construction needs 0 < beta < 1");
  }
  if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
    throw std::invalid_argument("epsilon must be a small positive number");
  }
  int j = 0;
  while (std::ldexp(1.0, j) < 1.0 / beta - 1e-12) ++j;
  k_ = std::max(j, 1) + 2;
  n_ = 3LL << k_;

  // Root 2^k+1 (0-based key 2^k); key 1 hangs left with the first perfect
  // block as its right subtree; key 2^{k+1}+1 hangs right over the other two.
  xstar_.nodes.clear();
  const long long b = 1LL << k_;
  int root = static_cast<int>(xstar_.nodes.size());
  xstar_.nodes.push_back({-1, -1, static_cast<int>(b)});
  int first = static_cast<int>(xstar_.nodes.size());
  xstar_.nodes.push_back({-1, -1, 0});
  int t1 = perfect_bst(1, b - 1, xstar_);
  xstar_.nodes[first].right = t1;
  int second = static_cast<int>(xstar_.nodes.size());
  xstar_.nodes.push_back({-1, -1, static_cast<int>(2 * b)});
  int t2 = perfect_bst(b + 1, 2 * b - 1, xstar_);
  int t3 = perfect_bst(2 * b + 1, n_ - 1, xstar_);
  xstar_.nodes[second].left = t2;
  xstar_.nodes[second].right = t3;
  xstar_.nodes[root].left = first;
  xstar_.nodes[root].right = second;
  xstar_.root = root;
  xstar_depths_ = xstar_.depths(static_cast<int>(n_));

  catalan_.assign(static_cast<size_t>(n_) + 1, 1.0L);
  for (long long i = 1; i <= n_; ++i) {
    catalan_[i] = catalan_[i - 1] * 2 * (2 * (i - 1) + 1) / (i + 1);
  }
}

double BstDuel::probability(long long key) const {
  if (key == 0) return 0.2;
  return 4.0 / (5.0 * static_cast<double>(n_ - 1));
}

double BstDuel::value_of_depth(int d) const {
  if (d == 1) return 1.0;
  if (d >= 2 && d <= k_ + 2) return epsilon_;
  return 0.0;
}

double BstDuel::sw_xstar() const {
  double sw = 0.0;
  for (long long w = 0; w < n_; ++w) {
    sw += probability(w) * value_of_depth(xstar_depths_[w]);
  }
  return sw;
}

double BstDuel::utility_xstar_vs(const std::vector<int>& depths) const {
  double u = 0.0;
  for (long long w = 0; w < n_; ++w) {
    double mine = value_of_depth(xstar_depths_[w]);
    double theirs = value_of_depth(depths[w]);
    if (mine > theirs) u += probability(w);
    else if (mine < theirs) u -= probability(w);
  }
  return u;
}

std::vector<int> BstDuel::sample_bst_depths(Rng& rng) const {
  std::vector<int> depths(static_cast<size_t>(n_), 0);
  struct Frame { long long lo, hi; int depth; };
  std::vector<Frame> stack{{0, n_ - 1, 1}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    if (f.lo > f.hi) continue;
    long long size = f.hi - f.lo + 1;
    long double total = catalan_[size];
    long double u = static_cast<long double>(rng.uniform()) * total;
    long long root = f.lo;
    long double acc = 0.0L;
    for (long long r = f.lo; r <= f.hi; ++r) {
      acc += catalan_[r - f.lo] * catalan_[f.hi - r];
      if (u < acc || r == f.hi) {
        root = r;
        break;
      }
    }
    depths[root] = f.depth;
    stack.push_back({f.lo, root - 1, f.depth + 1});
    stack.push_back({root + 1, f.hi, f.depth + 1});
  }
  return depths;
}

AppendixExample appendix_example() {
  RankingSpec spec({0.4, 0.4, 0.2}, RankingValuation::linear(1.0, 0.0));
  RankingDuel duel = ranking_duel(spec);
  // Orders (a,c,b) and (b,c,a) sit at lexicographic indices 1 and 3.
  std::vector<double> w(duel.game.num_strategies(), 0.0);
  w[1] = 0.5;
  w[3] = 0.5;
  return AppendixExample{std::move(duel), MixedStrategy(std::move(w))};
}

RankingDuel footnote_example() {
  RankingSpec spec({0.35, 0.33, 0.32}, RankingValuation::linear(1.0, 0.0));
  return ranking_duel(spec);
}

}  // namespace duelbench
