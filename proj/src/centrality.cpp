#include "billnet/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <string>
#include <thread>

#include "billnet/errors.hpp"

namespace billnet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }

  std::size_t size_of(std::size_t x) { return size_[find(x)]; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

// Runs body(begin, end) over [0, n) split into contiguous chunks.
template <typename Body>
void parallel_chunks(std::size_t n, unsigned threads, Body body) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (threads == 1) {
    body(std::size_t{0}, n);
    return;
  }
  std::vector<std::jthread> pool;
  const std::size_t chunk = (n + threads - 1) / threads;
  for (unsigned w = 0; w < threads; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([=] { body(begin, end); });
  }
}

double edge_length(double weight, DistanceMode mode) {
  if (mode == DistanceMode::Hops) return 1.0;
  return weight > 0.0 ? 1.0 / weight : kInf;
}

double closeness_from(std::span<const double> dist, std::size_t source) {
  std::size_t reached = 0;
  double total = 0.0;
  for (std::size_t j = 0; j < dist.size(); ++j) {
    if (j == source || dist[j] == kInf) continue;
    ++reached;
    total += dist[j];
  }
  return (reached > 0 && total > 0.0) ? static_cast<double>(reached) / total : 0.0;
}

void heap_dijkstra(const LccView& lcc, DistanceMode mode, std::size_t source, std::vector<double>& dist) {
  using Item = std::pair<double, std::uint32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  std::fill(dist.begin(), dist.end(), kInf);
  dist[source] = 0.0;
  queue.emplace(0.0, static_cast<std::uint32_t>(source));
  while (!queue.empty()) {
    const auto [d, u] = queue.top();
    queue.pop();
    if (d > dist[u]) continue;
    for (std::size_t e = lcc.offsets[u]; e < lcc.offsets[u + 1]; ++e) {
      const double len = edge_length(lcc.weights[e], mode);
      if (len == kInf) continue;
      const auto v = lcc.neighbors[e];
      if (d + len < dist[v]) {
        dist[v] = d + len;
        queue.emplace(dist[v], v);
      }
    }
  }
}

void dense_dijkstra(std::span<const double> lengths, std::size_t n, std::size_t source,
                    std::vector<double>& dist, std::vector<char>& done) {
  std::fill(dist.begin(), dist.end(), kInf);
  std::fill(done.begin(), done.end(), 0);
  dist[source] = 0.0;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t u = n;
    double best = kInf;
    for (std::size_t v = 0; v < n; ++v) {
      if (!done[v] && dist[v] < best) {
        best = dist[v];
        u = v;
      }
    }
    if (u == n) break;
    done[u] = 1;
    const double* row = lengths.data() + u * n;
    for (std::size_t v = 0; v < n; ++v) {
      const double cand = best + row[v];
      if (cand < dist[v]) dist[v] = cand;
    }
  }
}

}  // namespace

RatioNetwork ratio_network(std::span<const DecayedEntry> decayed, int month) {
  RatioNetwork net;
  net.month = month;
  net.edges.reserve(decayed.size());
  for (const auto& e : decayed) {
    if (e.tot > 0.0) net.edges.push_back({e.i, e.j, std::clamp(e.pass / e.tot, 0.0, 1.0)});
  }
  return net;
}

RatioNetwork ratio_network(const DecayedTensor& decayed, int month) {
  return ratio_network(decayed.at_month(month), month);
}

LccView largest_component(const RatioNetwork& net) {
  std::vector<LegislatorIndex> nodes;
  nodes.reserve(net.edges.size() * 2);
  for (const auto& e : net.edges) {
    if (e.u == e.v) continue;
    nodes.push_back(e.u);
    nodes.push_back(e.v);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  if (nodes.empty()) return {};

  auto local_of = [&](LegislatorIndex g) {
    return static_cast<std::size_t>(std::lower_bound(nodes.begin(), nodes.end(), g) - nodes.begin());
  };
  DisjointSets sets(nodes.size());
  for (const auto& e : net.edges) {
    if (e.u != e.v) sets.unite(local_of(e.u), local_of(e.v));
  }

  // nodes are ascending, so the first root reaching the max size also holds
  // the smallest index among equally large components
  std::size_t best_root = sets.find(0);
  std::size_t best_size = sets.size_of(0);
  for (std::size_t k = 1; k < nodes.size(); ++k) {
    if (sets.size_of(k) > best_size) {
      best_size = sets.size_of(k);
      best_root = sets.find(k);
    }
  }

  LccView view;
  std::vector<std::uint32_t> local(nodes.size(), std::numeric_limits<std::uint32_t>::max());
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (sets.find(k) == best_root) {
      local[k] = static_cast<std::uint32_t>(view.members.size());
      view.members.push_back(nodes[k]);
    }
  }

  std::vector<std::size_t> degree(view.members.size(), 0);
  for (const auto& e : net.edges) {
    if (e.u == e.v) continue;
    const auto a = local[local_of(e.u)];
    if (a == std::numeric_limits<std::uint32_t>::max()) continue;
    ++degree[a];
    ++degree[local[local_of(e.v)]];
  }
  view.offsets.assign(view.members.size() + 1, 0);
  for (std::size_t k = 0; k < degree.size(); ++k) view.offsets[k + 1] = view.offsets[k] + degree[k];
  view.neighbors.resize(view.offsets.back());
  view.weights.resize(view.offsets.back());
  std::vector<std::size_t> cursor(view.offsets.begin(), view.offsets.end() - 1);
  for (const auto& e : net.edges) {
    if (e.u == e.v) continue;
    const auto a = local[local_of(e.u)];
    if (a == std::numeric_limits<std::uint32_t>::max()) continue;
    const auto b = local[local_of(e.v)];
    view.neighbors[cursor[a]] = b;
    view.weights[cursor[a]++] = e.weight;
    view.neighbors[cursor[b]] = a;
    view.weights[cursor[b]++] = e.weight;
  }
  return view;
}

EigenResult eigenvector(const LccView& lcc, const EigenOptions& options, int month) {
  const std::string where = " (month " + std::to_string(month) + ")";
  if (lcc.empty()) throw ComputationError("eigenvector of an empty component" + where);
  if (std::none_of(lcc.weights.begin(), lcc.weights.end(), [](double w) { return w > 0.0; })) {
    throw ComputationError("eigenvector undefined: all component weights are zero" + where);
  }

  const std::size_t n = lcc.size();
  std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> y(n);

  auto multiply = [&](const std::vector<double>& in, std::vector<double>& out) {
    for (std::size_t u = 0; u < n; ++u) {
      double acc = 0.0;
      for (std::size_t e = lcc.offsets[u]; e < lcc.offsets[u + 1]; ++e) {
        acc += lcc.weights[e] * in[lcc.neighbors[e]];
      }
      out[u] = acc;
    }
  };

  for (int iter = 1; iter <= options.max_iter; ++iter) {
    multiply(x, y);
    // Shift by half the current Rayleigh quotient so that -lambda (bipartite
    // components) cannot tie with lambda in magnitude.
    const double rayleigh = std::inner_product(x.begin(), x.end(), y.begin(), 0.0);
    const double shift = 0.5 * rayleigh;
    double norm = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
      y[u] += shift * x[u];
      norm += y[u] * y[u];
    }
    norm = std::sqrt(norm);
    double change = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
      y[u] /= norm;
      change = std::max(change, std::abs(y[u] - x[u]));
    }
    x.swap(y);
    if (change < options.tol) {
      EigenResult result;
      multiply(x, y);
      result.eigenvalue = std::inner_product(x.begin(), x.end(), y.begin(), 0.0);
      result.values = std::move(x);
      result.iterations = iter;
      return result;
    }
  }
  throw ComputationError("power iteration did not converge within " + std::to_string(options.max_iter) +
                         " iterations" + where);
}

std::vector<double> closeness(const LccView& lcc, const ClosenessOptions& options) {
  const std::size_t n = lcc.size();
  std::vector<double> out(n, 0.0);
  if (n < 2) return out;

  bool dense = options.method == ShortestPathMethod::Dense;
  if (options.method == ShortestPathMethod::Auto) {
    dense = lcc.neighbors.size() * 4 >= n * n && n <= 20'000;
  }

  if (dense) {
    std::vector<double> lengths(n * n, kInf);
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t e = lcc.offsets[u]; e < lcc.offsets[u + 1]; ++e) {
        lengths[u * n + lcc.neighbors[e]] = edge_length(lcc.weights[e], options.distance);
      }
    }
    parallel_chunks(n, options.threads, [&](std::size_t begin, std::size_t end) {
      std::vector<double> dist(n);
      std::vector<char> done(n);
      for (std::size_t s = begin; s < end; ++s) {
        dense_dijkstra(lengths, n, s, dist, done);
        out[s] = closeness_from(dist, s);
      }
    });
  } else {
    parallel_chunks(n, options.threads, [&](std::size_t begin, std::size_t end) {
      std::vector<double> dist(n);
      for (std::size_t s = begin; s < end; ++s) {
        heap_dijkstra(lcc, options.distance, s, dist);
        out[s] = closeness_from(dist, s);
      }
    });
  }
  return out;
}

std::vector<double> strength(const LccView& lcc) {
  std::vector<double> out(lcc.size(), 0.0);
  for (std::size_t u = 0; u < lcc.size(); ++u) {
    for (std::size_t e = lcc.offsets[u]; e < lcc.offsets[u + 1]; ++e) out[u] += lcc.weights[e];
  }
  return out;
}

std::vector<double> scatter(const LccView& lcc, std::span<const double> local, std::size_t n_legislators) {
  if (local.size() != lcc.size()) throw ConfigError("local value vector does not match the component");
  std::vector<double> out(n_legislators, 0.0);
  for (std::size_t k = 0; k < lcc.size(); ++k) {
    if (lcc.members[k] >= n_legislators) throw ConfigError("component member outside the legislator table");
    out[lcc.members[k]] = local[k];
  }
  return out;
}

}  // namespace billnet
