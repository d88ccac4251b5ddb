#include <doctest.h>

#include <cmath>
#include <random>

#include "billnet/centrality.hpp"
#include "billnet/errors.hpp"
#include "oracles.hpp"

using namespace billnet;

namespace {

RatioNetwork net(std::vector<WeightedEdge> edges) { return RatioNetwork{1, std::move(edges)}; }

LccView path3(double w) { return largest_component(net({{0, 1, w}, {1, 2, w}})); }

}  // namespace

TEST_CASE("ratio network keeps zero-ratio edges") {
  const std::vector<DecayedEntry> c{{0, 1, 1.0, 2.0}, {1, 2, 0.0, 3.0}, {2, 3, 0.0, 0.0}};
  const auto r = ratio_network(c, 4);
  CHECK(r.month == 4);
  REQUIRE(r.edges.size() == 2);
  CHECK(r.edges[0].weight == 0.5);
  CHECK(r.edges[1].weight == 0.0);
  // the zero-weight edge still joins node 2 to the component
  CHECK(largest_component(r).size() == 3);
}

TEST_CASE("largest component selection") {
  // two triangles, one with a pendant
  auto lcc = largest_component(
      net({{0, 1, 1}, {1, 2, 1}, {0, 2, 1}, {3, 4, 1}, {4, 5, 1}, {3, 5, 1}, {5, 6, 1}}));
  CHECK(lcc.members == std::vector<LegislatorIndex>{3, 4, 5, 6});
  CHECK(lcc.edge_count() == 4);

  lcc = largest_component(net({{0, 1, 1}, {0, 2, 1}, {1, 2, 1}}));
  CHECK(lcc.size() == 3);

  // equal sizes: the component with the smallest index wins, regardless of edge order
  lcc = largest_component(net({{5, 7, 1}, {2, 9, 1}}));
  CHECK(lcc.members == std::vector<LegislatorIndex>{2, 9});
  lcc = largest_component(net({{2, 9, 1}, {5, 7, 1}}));
  CHECK(lcc.members == std::vector<LegislatorIndex>{2, 9});

  CHECK(largest_component(net({})).empty());
}

TEST_CASE("eigenvector examples") {
  for (double w : {0.01, 0.5, 1.0}) {
    const auto e = eigenvector(largest_component(net({{3, 8, w}})));
    CHECK(e.values[0] == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-9));
    CHECK(e.values[1] == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-9));
  }
  const auto p = eigenvector(path3(1.0));
  CHECK(p.values[0] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(p.values[1] == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-9));
  CHECK(p.values[2] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(p.eigenvalue == doctest::Approx(std::sqrt(2.0)));

  const auto star = eigenvector(largest_component(net({{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {0, 4, 1}})));
  for (int leaf = 1; leaf <= 4; ++leaf) {
    CHECK(star.values[0] > star.values[leaf]);
    CHECK(star.values[leaf] == doctest::Approx(star.values[1]).epsilon(1e-12));
  }
}

TEST_CASE("eigenvector errors") {
  CHECK_THROWS_AS(eigenvector(LccView{}), ComputationError);
  CHECK_THROWS_AS(eigenvector(path3(0.0)), ComputationError);
  try {
    eigenvector(largest_component(net({{0, 1, 1}, {1, 2, 0.3}, {2, 3, 1}})), EigenOptions{1e-15, 2}, 17);
    FAIL("expected non-convergence");
  } catch (const ComputationError& e) {
    CHECK(std::string(e.what()).find("month 17") != std::string::npos);
  }
}

TEST_CASE("eigenvector matches the dense oracle and the residual bound") {
  std::mt19937_64 gen(99);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(gen() % 7);
    const auto g = oracle::random_connected(gen, n, 0.4, trial % 3 == 0 ? 0.3 : 0.0);
    const auto lcc = largest_component(oracle::to_network(g));
    REQUIRE(static_cast<int>(lcc.size()) == n);
    const EigenOptions opts;
    const auto e = eigenvector(lcc, opts);
    double lambda = 0.0;
    const auto expect = oracle::perron_vector(g, &lambda);
    const auto got = oracle::by_node(lcc, e.values, n);
    double norm = 0.0;
    for (int i = 0; i < n; ++i) {
      CHECK(std::abs(got[i] - expect[i]) <= 1e-8);
      CHECK(got[i] >= 0.0);
      norm += got[i] * got[i];
    }
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(e.eigenvalue == doctest::Approx(lambda).epsilon(1e-9));
    for (int u = 0; u < n; ++u) {
      double wx = 0.0;
      for (int v = 0; v < n; ++v) wx += g.w[u][v] * got[v];
      CHECK(std::abs(wx - e.eigenvalue * got[u]) <= 10 * opts.tol * e.eigenvalue);
    }
  }
}

TEST_CASE("eigenvector is scale invariant") {
  std::mt19937_64 gen(5);
  const auto g = oracle::random_connected(gen, 7, 0.5);
  auto scaled = g;
  for (auto& row : scaled.w) {
    for (auto& w : row) w *= 3.5;
  }
  const auto a = eigenvector(largest_component(oracle::to_network(g)));
  const auto b = eigenvector(largest_component(oracle::to_network(scaled)));
  for (std::size_t i = 0; i < a.values.size(); ++i) CHECK(std::abs(a.values[i] - b.values[i]) <= 1e-9);
  CHECK(b.eigenvalue == doctest::Approx(3.5 * a.eigenvalue));
}

TEST_CASE("closeness examples") {
  auto c = closeness(path3(1.0));
  CHECK(c[1] == doctest::Approx(1.0));
  CHECK(c[0] == doctest::Approx(2.0 / 3.0));
  c = closeness(path3(0.5));
  CHECK(c[1] == doctest::Approx(0.5));

  CHECK(closeness(LccView{}).empty());
  // zero-weight edge: unreachable under reciprocal lengths, one hop otherwise
  const auto lcc = largest_component(net({{0, 1, 1.0}, {1, 2, 0.0}}));
  c = closeness(lcc);
  CHECK(c[0] == doctest::Approx(1.0));
  CHECK(c[2] == 0.0);
  c = closeness(lcc, {DistanceMode::Hops});
  CHECK(c[2] == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("closeness matches Floyd-Warshall with both shortest-path methods") {
  std::mt19937_64 gen(1234);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(gen() % 7);
    const auto g = oracle::random_connected(gen, n, 0.35, trial % 2 == 0 ? 0.25 : 0.0);
    const auto lcc = largest_component(oracle::to_network(g));
    for (auto mode : {DistanceMode::Reciprocal, DistanceMode::Hops}) {
      const auto expect = oracle::closeness(g, mode == DistanceMode::Hops);
      for (auto method : {ShortestPathMethod::Heap, ShortestPathMethod::Dense, ShortestPathMethod::Auto}) {
        const auto got = oracle::by_node(lcc, closeness(lcc, {mode, method, 1u + static_cast<unsigned>(trial % 3)}), n);
        for (int i = 0; i < n; ++i) CHECK(std::abs(got[i] - expect[i]) <= 1e-9);
      }
    }
  }
}

TEST_CASE("strength examples and oracle") {
  auto s = strength(largest_component(net({{0, 1, 0.5}, {0, 2, 0.25}})));
  CHECK(s[0] == 0.75);
  CHECK(s[1] == 0.5);
  s = strength(largest_component(net({{0, 1, 1.0}})));
  CHECK(s[1] == 1.0);
  s = strength(largest_component(net({{0, 1, 0.3}, {1, 2, 0.3}, {0, 2, 0.3}})));
  for (double v : s) CHECK(v == doctest::Approx(0.6));

  std::mt19937_64 gen(77);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(gen() % 7);
    auto g = oracle::random_connected(gen, n, 0.4);
    const auto lcc = largest_component(oracle::to_network(g));
    const auto before = oracle::by_node(lcc, strength(lcc), n);
    CHECK(before == oracle::strength(g));

    // adding an edge never lowers anyone's strength
    const int u = static_cast<int>(gen() % n), v = static_cast<int>(gen() % n);
    if (u != v && g.present[u][v] == 0.0) {
      g.w[u][v] = g.w[v][u] = 0.4;
      g.present[u][v] = g.present[v][u] = 1.0;
      const auto lcc2 = largest_component(oracle::to_network(g));
      const auto after = oracle::by_node(lcc2, strength(lcc2), n);
      for (int i = 0; i < n; ++i) CHECK(after[i] >= before[i]);
    }
  }
}

TEST_CASE("measures are equivariant under relabeling") {
  std::mt19937_64 gen(31);
  const int n = 8;
  const auto g = oracle::random_connected(gen, n, 0.4);
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), gen);
  oracle::Graph h = g;
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      h.w[perm[u]][perm[v]] = g.w[u][v];
      h.present[perm[u]][perm[v]] = g.present[u][v];
    }
  }
  const auto lg = largest_component(oracle::to_network(g));
  const auto lh = largest_component(oracle::to_network(h));
  const auto eg = oracle::by_node(lg, eigenvector(lg).values, n);
  const auto eh = oracle::by_node(lh, eigenvector(lh).values, n);
  const auto cg = oracle::by_node(lg, closeness(lg), n);
  const auto ch = oracle::by_node(lh, closeness(lh), n);
  const auto sg = oracle::by_node(lg, strength(lg), n);
  const auto sh = oracle::by_node(lh, strength(lh), n);
  for (int i = 0; i < n; ++i) {
    CHECK(std::abs(eg[i] - eh[perm[i]]) <= 1e-9);
    CHECK(std::abs(cg[i] - ch[perm[i]]) <= 1e-12);
    CHECK(sg[i] == doctest::Approx(sh[perm[i]]).epsilon(1e-15));
  }
}

TEST_CASE("scatter and centrality bill scores") {
  const auto lcc = largest_component(net({{2, 4, 1.0}}));
  const std::vector<double> local{0.6, 0.2};
  const auto dense = scatter(lcc, local, 6);
  CHECK(dense == std::vector<double>{0, 0, 0.6, 0, 0.2, 0});
  CHECK_THROWS_AS(scatter(lcc, std::vector<double>{1.0}, 6), ConfigError);

  ScoreSeries s(6);
  s.push_month({0.1, 0.3, 0.6, 0, 0, 0});
  const std::vector<IndexedBill> bills{{"a", 1, {0, 1}, true}, {"b", 1, {4, 5}, false}, {"c", 1, {3, 2}, false}};
  const auto r = centrality_bill_scores(bills, s);
  CHECK(r.scores[0].score_mean == doctest::Approx(0.2));
  CHECK(r.scores[0].score_max == doctest::Approx(0.3));
  CHECK(r.scores[1].score_mean == 0.0);
  CHECK(r.scores[1].score_max == 0.0);
  CHECK(r.scores[2].score_mean == doctest::Approx(0.3));
  CHECK(r.scores[2].score_max == doctest::Approx(0.6));
}
