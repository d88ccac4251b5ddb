#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "billnet/influence.hpp"
#include "billnet/tempnet.hpp"

namespace billnet {

struct WeightedEdge {
  LegislatorIndex u = 0;  // u < v
  LegislatorIndex v = 0;
  double weight = 0.0;
};

// Month-t network with W_uv = C_pass / C_tot wherever C_tot > 0. Pairs
// that shared bills but none that passed keep a zero-weight edge.
struct RatioNetwork {
  int month = 0;
  std::vector<WeightedEdge> edges;
};

RatioNetwork ratio_network(std::span<const DecayedEntry> decayed, int month);
RatioNetwork ratio_network(const DecayedTensor& decayed, int month);

// Largest connected component in compressed adjacency form. Local node k
// corresponds to legislator members[k]; members are sorted ascending.
struct LccView {
  std::vector<LegislatorIndex> members;
  std::vector<std::size_t> offsets;  // size() + 1 entries
  std::vector<std::uint32_t> neighbors;
  std::vector<double> weights;

  std::size_t size() const { return members.size(); }
  bool empty() const { return members.empty(); }
  std::size_t edge_count() const { return neighbors.size() / 2; }
};

// Components by edge presence, weight ignored. Ties in component size go to
// the component holding the smallest legislator index.
LccView largest_component(const RatioNetwork& net);

struct EigenOptions {
  double tol = 1e-10;
  int max_iter = 10'000;
};

struct EigenResult {
  std::vector<double> values;  // unit Euclidean norm, nonnegative
  double eigenvalue = 0.0;     // Rayleigh quotient of the result
  int iterations = 0;
};

// Leading eigenvector by shifted power iteration from the uniform vector.
// Throws ComputationError on an empty view, all-zero weights, or when
// max_iter is exhausted; `month` only labels the error.
EigenResult eigenvector(const LccView& lcc, const EigenOptions& options = {}, int month = 0);

enum class DistanceMode {
  Reciprocal,  // edge length 1/W; zero-weight edges are not traversable
  Hops,        // every edge has length 1
};

enum class ShortestPathMethod { Auto, Heap, Dense };

struct ClosenessOptions {
  DistanceMode distance = DistanceMode::Reciprocal;
  ShortestPathMethod method = ShortestPathMethod::Auto;
  unsigned threads = 1;
};

// Cl(i) = (reachable - 1) / sum_j d_ji over the nodes j reachable from i.
// Nodes that reach nothing (including a one-node view) score 0.
std::vector<double> closeness(const LccView& lcc, const ClosenessOptions& options = {});

// s_i = sum of incident edge weights.
std::vector<double> strength(const LccView& lcc);

// Spreads LCC-local values onto a dense legislator vector, 0 elsewhere.
std::vector<double> scatter(const LccView& lcc, std::span<const double> local, std::size_t n_legislators);

// Same contract as bill_scores; legislators outside the LCC contribute 0.
inline BillScoreResult centrality_bill_scores(std::span<const IndexedBill> bills,
                                              const ScoreSeries& series) {
  return bill_scores(bills, series);
}

}  // namespace billnet
