#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "stylo/error.h"
#include "stylo/metrics.h"
#include "support/graph_gen.h"
#include "support/path_oracle.h"

using stylo::NodeId;
using stylo::UndirectedNetwork;
using doctest::Approx;

namespace {

UndirectedNetwork graph(std::size_t n, std::vector<std::pair<NodeId, NodeId>> edges) {
  return UndirectedNetwork::from_edges(n, edges);
}

UndirectedNetwork path_graph(std::size_t n) {
  std::vector<std::pair<NodeId, NodeId>> e;
  for (NodeId i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return graph(n, e);
}

UndirectedNetwork star(std::size_t leaves) {
  std::vector<std::pair<NodeId, NodeId>> e;
  for (NodeId i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return graph(leaves + 1, e);
}

UndirectedNetwork cycle(std::size_t n) {
  std::vector<std::pair<NodeId, NodeId>> e;
  for (NodeId i = 0; i < n; ++i) e.emplace_back(i, static_cast<NodeId>((i + 1) % n));
  return graph(n, e);
}

UndirectedNetwork complete(std::size_t n) {
  std::vector<std::pair<NodeId, NodeId>> e;
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b = a + 1; b < n; ++b) e.emplace_back(a, b);
  }
  return graph(n, e);
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace

TEST_CASE("three-node path") {
  const auto g = path_graph(3);
  CHECK(stylo::average_neighbor_degree(g) == std::vector<double>{2.0, 1.0, 2.0});
  CHECK(stylo::betweenness(g) == std::vector<double>{0.0, 1.0, 0.0});
  const auto l = stylo::avg_shortest_path_length(g);
  CHECK(l[0] == Approx(1.5));
  CHECK(l[1] == Approx(1.0));
  CHECK(l[2] == Approx(1.5));
  CHECK(stylo::clustering_coefficient(g) == std::vector<double>{0.0, 0.0, 0.0});
  const auto r = stylo::assortativity(g);
  REQUIRE(r.has_value());
  CHECK(*r == Approx(-1.0));
}

TEST_CASE("star") {
  const auto g = star(4);
  const auto bc = stylo::betweenness(g);
  CHECK(bc[0] == Approx(6.0));
  for (int i = 1; i <= 4; ++i) CHECK(bc[i] == 0.0);
  const auto adn = stylo::average_neighbor_degree(g);
  CHECK(adn[0] == Approx(1.0));
  CHECK(adn[1] == Approx(4.0));
  CHECK(*stylo::assortativity(g) == Approx(-1.0));
}

TEST_CASE("four-cycle and complete graphs") {
  const auto c4 = cycle(4);
  for (double b : stylo::betweenness(c4)) CHECK(b == Approx(0.5));
  for (double c : stylo::clustering_coefficient(c4)) CHECK(c == 0.0);
  CHECK_FALSE(stylo::assortativity(c4).has_value());

  const auto k4 = complete(4);
  for (double c : stylo::clustering_coefficient(k4)) CHECK(c == Approx(1.0));
  for (double b : stylo::betweenness(k4)) CHECK(b == 0.0);
  for (double l : stylo::avg_shortest_path_length(k4)) CHECK(l == Approx(1.0));
  CHECK_FALSE(stylo::assortativity(k4).has_value());
}

TEST_CASE("triangle with a tail") {
  const auto g = graph(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}});
  const auto cc = stylo::clustering_coefficient(g);
  CHECK(cc[0] == Approx(1.0));
  CHECK(cc[1] == Approx(1.0));
  CHECK(cc[2] == Approx(1.0 / 3.0));
  CHECK(cc[3] == 0.0);
}

TEST_CASE("path of four is disassortative") {
  const auto r = stylo::assortativity(path_graph(4));
  REQUIRE(r.has_value());
  CHECK(*r == Approx(-0.5));
}

TEST_CASE("disconnected graph: lengths per component") {
  const auto g = graph(5, {{0, 1}, {2, 3}});
  const auto stats = stylo::path_statistics(g);
  CHECK(stats.path_length == std::vector<double>{1.0, 1.0, 1.0, 1.0, 0.0});
  CHECK(stats.giant_component_fraction == Approx(0.4));
  CHECK(stats.isolated_nodes == 1);
  CHECK(stylo::average_neighbor_degree(g)[4] == 0.0);
}

TEST_CASE("edgeless network has no assortativity") {
  CHECK_THROWS_AS(stylo::assortativity(graph(3, {})), stylo::DataError);
}

TEST_CASE("summary statistics") {
  const std::vector<double> a{1, 2, 3};
  auto s = stylo::summarize(a);
  CHECK(s.mean == Approx(2.0));
  CHECK(s.deviation == Approx(1.0));
  CHECK(s.skewness == Approx(0.0));

  const std::vector<double> constant{5, 5, 5, 5};
  s = stylo::summarize(constant);
  CHECK(s.mean == 5.0);
  CHECK(s.deviation == 0.0);
  CHECK(s.skewness == 0.0);

  const std::vector<double> skewed{0, 0, 0, 4};
  s = stylo::summarize(skewed);
  CHECK(s.mean == Approx(1.0));
  CHECK(s.deviation == Approx(2.0));
  CHECK(s.skewness == Approx(0.75));

  const std::vector<double> one{1.0};
  CHECK_THROWS_AS(stylo::summarize(one), stylo::DataError);
}

TEST_CASE("summary statistics under affine maps") {
  stylo::Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> x(2 + rng.index(40));
    for (auto& v : x) v = rng.uniform() * 10.0 - 3.0;
    const double a = 0.1 + rng.uniform() * 5.0;
    const double b = rng.uniform() * 20.0 - 10.0;
    std::vector<double> y;
    for (double v : x) y.push_back(a * v + b);
    std::vector<double> neg;
    for (double v : x) neg.push_back(-v);
    const auto sx = stylo::summarize(x);
    const auto sy = stylo::summarize(y);
    CHECK(sy.mean == Approx(a * sx.mean + b).epsilon(1e-9));
    CHECK(sy.deviation == Approx(a * sx.deviation).epsilon(1e-9));
    CHECK(sy.skewness == Approx(sx.skewness).epsilon(1e-7).scale(1.0));
    CHECK(stylo::summarize(neg).skewness == Approx(-sx.skewness).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("random graphs against the walk-count oracle") {
  stylo::Rng rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng.index(59);
    const double p = std::array{0.03, 0.08, 0.2, 0.5}[trial % 4];
    const auto g = stylo::testing::random_graph(n, p, rng);
    CAPTURE(n);
    CAPTURE(p);
    const stylo::testing::PathOracle oracle(g);
    const auto stats = stylo::path_statistics(g);
    const auto expected_bc = oracle.betweenness();
    const auto expected_l = oracle.path_length();
    double bc_total = 0.0, pair_excess = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      CHECK(stats.betweenness[v] == Approx(expected_bc[v]).epsilon(1e-9).scale(1.0));
      CHECK(stats.path_length[v] == Approx(expected_l[v]).epsilon(1e-12));
      bc_total += stats.betweenness[v];
      for (std::size_t t = v + 1; t < n; ++t) {
        if (oracle.dist[v][t] > 0) pair_excess += oracle.dist[v][t] - 1;
      }
    }
    // Every connected pair passes through d - 1 interior nodes.
    CHECK(bc_total == Approx(pair_excess).epsilon(1e-9).scale(1.0));
    CHECK(stylo::betweenness(g, 1) == stylo::betweenness(g, 3));

    const auto adn = stylo::average_neighbor_degree(g);
    const auto cc = stylo::clustering_coefficient(g);
    std::vector<double> x, y;
    for (NodeId v = 0; v < n; ++v) {
      const auto& nb = g.neighbors(v);
      double sum = 0.0;
      for (NodeId w : nb) {
        sum += static_cast<double>(g.degree(w));
        x.push_back(static_cast<double>(g.degree(v)));
        y.push_back(static_cast<double>(g.degree(w)));
      }
      CHECK(adn[v] == Approx(nb.empty() ? 0.0 : sum / nb.size()));
      std::size_t links = 0;
      for (std::size_t i = 0; i < nb.size(); ++i) {
        for (std::size_t j = i + 1; j < nb.size(); ++j) {
          const auto& ni = g.neighbors(nb[i]);
          if (std::find(ni.begin(), ni.end(), nb[j]) != ni.end()) ++links;
        }
      }
      const double k = static_cast<double>(nb.size());
      CHECK(cc[v] == Approx(k < 2 ? 0.0 : 2.0 * links / (k * (k - 1))));
      CHECK(cc[v] >= 0.0);
      CHECK(cc[v] <= 1.0);
    }
    if (g.edge_count() == 0) {
      CHECK_THROWS_AS(stylo::assortativity(g), stylo::DataError);
      continue;
    }
    const auto r = stylo::assortativity(g);
    const double expected_r = pearson(x, y);
    if (std::isfinite(expected_r)) {
      REQUIRE(r.has_value());
      CHECK(*r == Approx(expected_r).epsilon(1e-9).scale(1.0));
      CHECK(*r >= -1.0 - 1e-12);
      CHECK(*r <= 1.0 + 1e-12);
    } else {
      CHECK_FALSE(r.has_value());
    }
  }
}

TEST_CASE("network metrics bundle") {
  const auto m = stylo::compute_network_metrics(path_graph(3));
  CHECK(m.adn.mean == Approx(5.0 / 3.0));
  CHECK(m.betweenness.mean == Approx(1.0 / 3.0));
  CHECK(m.path_length.mean == Approx(4.0 / 3.0));
  CHECK(m.clustering.mean == 0.0);
  CHECK(m.giant_component_fraction == 1.0);
  REQUIRE(m.assortativity.has_value());
  CHECK(*m.assortativity == Approx(-1.0));
}
