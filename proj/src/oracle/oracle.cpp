#include "fieldscope/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fieldscope::oracle {

double entropy(std::span<const double> p, double alpha) {
  double s = 0.0;
  if (alpha == 1.0) {
    for (double x : p) {
      if (x > 0.0) s += x * std::log(1.0 / x);
    }
    return s;
  }
  for (double x : p) {
    if (x > 0.0) s += std::pow(x, alpha);
  }
  return (s - 1.0) / (1.0 - alpha);
}

double divergence(std::span<const double> p, std::span<const double> q, double alpha) {
  std::vector<double> mix;
  for (std::size_t k = 0; k < p.size(); ++k) mix.push_back((p[k] + q[k]) / 2.0);
  return entropy(mix, alpha) - entropy(p, alpha) / 2.0 - entropy(q, alpha) / 2.0;
}

double divergence_bound(std::span<const double> p, std::span<const double> q, double alpha) {
  return (std::pow(2.0, 1.0 - alpha) - 1.0) / 2.0 * (entropy(p, alpha) + entropy(q, alpha) + 2.0 / (1.0 - alpha));
}

double normalized_divergence(std::span<const double> p, std::span<const double> q, double alpha) {
  return divergence(p, q, alpha) / divergence_bound(p, q, alpha);
}

double citation_dissimilarity(std::span<const std::uint64_t> counts, std::size_t n, std::size_t i, std::size_t j) {
  if (i == j) return 0.0;
  auto c = [&](std::size_t a, std::size_t b) { return static_cast<double>(counts[a * n + b]); };
  // C(a, not b): citations from a to anything but b. C(not a, b): to b from anything but a.
  auto from_excluding = [&](std::size_t a, std::size_t b) {
    double s = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      if (t != b) s += c(a, t);
    }
    return s;
  };
  auto to_excluding = [&](std::size_t a, std::size_t b) {
    double s = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      if (t != a) s += c(t, b);
    }
    return s;
  };
  const double num_ij = from_excluding(i, j) + to_excluding(i, j);
  const double den_ij = c(i, j) + num_ij;
  const double num_ji = from_excluding(j, i) + to_excluding(j, i);
  const double den_ji = c(j, i) + num_ji;
  if (den_ij == 0.0 || den_ji == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return 0.5 * (num_ij / den_ij + num_ji / den_ji);
}

int tree_distance(const TaxonomyTree& tree, const std::string& i, const std::string& j) {
  auto root_path = [&](std::string id) {
    std::vector<std::string> path{id};
    while (!tree.node(id).parent.empty()) {
      id = tree.node(id).parent;
      path.push_back(id);
    }
    path.emplace_back();  // implicit root
    return path;
  };
  const auto a = root_path(i);
  const auto b = root_path(j);
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (std::find(b.begin(), b.end(), a[k]) != b.end()) return static_cast<int>(k);
  }
  return -1;
}

double kendall_tau_b(std::span<const double> x, std::span<const double> y) {
  double concordant = 0.0;
  double discordant = 0.0;
  double tie_x = 0.0;
  double tie_y = 0.0;
  for (std::size_t a = 0; a < x.size(); ++a) {
    for (std::size_t b = a + 1; b < x.size(); ++b) {
      const double dx = x[a] - x[b];
      const double dy = y[a] - y[b];
      if (dx == 0.0 && dy == 0.0) continue;
      if (dx == 0.0) {
        tie_x += 1.0;
      } else if (dy == 0.0) {
        tie_y += 1.0;
      } else if ((dx > 0.0) == (dy > 0.0)) {
        concordant += 1.0;
      } else {
        discordant += 1.0;
      }
    }
  }
  return (concordant - discordant) /
         std::sqrt((concordant + discordant + tie_x) * (concordant + discordant + tie_y));
}

double spearman_rho(std::span<const double> x, std::span<const double> y) {
  auto ranks = [](std::span<const double> v) {
    std::vector<double> r(v.size());
    for (std::size_t a = 0; a < v.size(); ++a) {
      double less = 0.0;
      double equal = 0.0;
      for (double w : v) {
        if (w < v[a]) less += 1.0;
        if (w == v[a]) equal += 1.0;
      }
      r[a] = less + (equal + 1.0) / 2.0;
    }
    return r;
  };
  const auto rx = ranks(x);
  const auto ry = ranks(y);
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t k = 0; k < rx.size(); ++k) {
    mx += rx[k];
    my += ry[k];
  }
  mx /= static_cast<double>(rx.size());
  my /= static_cast<double>(ry.size());
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t k = 0; k < rx.size(); ++k) {
    sxy += (rx[k] - mx) * (ry[k] - my);
    sxx += (rx[k] - mx) * (rx[k] - mx);
    syy += (ry[k] - my) * (ry[k] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

Dendrogram group_average(const std::vector<std::vector<double>>& d, const std::vector<std::string>& labels) {
  const std::size_t n = labels.size();
  Dendrogram out;
  out.leaves = labels;
  struct Cluster {
    std::size_t id;
    std::vector<std::size_t> members;
  };
  std::vector<Cluster> live;
  for (std::size_t i = 0; i < n; ++i) live.push_back({i, {i}});
  while (live.size() > 1) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t ba = 0;
    std::size_t bb = 0;
    for (std::size_t x = 0; x < live.size(); ++x) {
      for (std::size_t y = 0; y < live.size(); ++y) {
        if (live[x].id >= live[y].id) continue;
        double sum = 0.0;
        for (auto u : live[x].members) {
          for (auto v : live[y].members) sum += d[u][v];
        }
        const double avg = sum / static_cast<double>(live[x].members.size() * live[y].members.size());
        const bool earlier = live[x].id < live[ba].id || (live[x].id == live[ba].id && live[y].id < live[bb].id);
        if (avg < best || (avg == best && earlier)) {
          best = avg;
          ba = x;
          bb = y;
        }
      }
    }
    Cluster merged{n + out.merges.size(), live[ba].members};
    merged.members.insert(merged.members.end(), live[bb].members.begin(), live[bb].members.end());
    out.merges.push_back({live[ba].id, live[bb].id, best, merged.id, merged.members.size()});
    if (out.merges.size() > 1 && best < out.merges[out.merges.size() - 2].height) out.monotone = false;
    const std::size_t hi = std::max(ba, bb);
    const std::size_t lo = std::min(ba, bb);
    live.erase(live.begin() + static_cast<std::ptrdiff_t>(hi));
    live.erase(live.begin() + static_cast<std::ptrdiff_t>(lo));
    live.push_back(std::move(merged));
  }
  return out;
}

}  // namespace fieldscope::oracle
