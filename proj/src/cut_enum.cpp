#include "pathtsp/cut_enum.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace pathtsp {

namespace {

std::vector<std::int64_t> dense_square(int n, const ScaledIntegers& scaled) {
  std::vector<std::int64_t> out(static_cast<std::size_t>(n) * n, 0);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      const std::int64_t value = scaled.values[edge_index(n, {u, v})];
      out[static_cast<std::size_t>(u) * n + v] = value;
      out[static_cast<std::size_t>(v) * n + u] = value;
    }
  }
  return out;
}

}  // namespace

CutEnumerator::CutEnumerator(int n, std::span<const Rational> weights) : n_(n) {
  if (n < 2 || n > 62) throw LimitError("cut enumeration supports 2..62 vertices");
  if (weights.size() != static_cast<std::size_t>(edge_count(n))) throw PreconditionError("weight vector size mismatch");
  ScaledIntegers scaled = scale_to_integers(weights, weights.size());
  if (!scaled.fits) throw LimitError("cut weights do not fit 62-bit scaled integers");
  scale_ = scaled.scale;
  w_ = dense_square(n, scaled);
}

std::int64_t CutEnumerator::strict_bound(const Rational& bound) const {
  const Rational scaled = bound * scale_;
  const mpz_class m = ceil(scaled);
  if (!m.fits_slong_p()) throw LimitError("threshold out of range");
  return m.get_si();
}

Rational CutEnumerator::unscale(std::int64_t scaled) const {
  Rational r(mpz_class(static_cast<long>(scaled)), scale_);
  r.canonicalize();
  return r;
}

FlowNetwork::FlowNetwork(int n, std::span<const Rational> weights) : n_(n) {
  if (weights.size() != static_cast<std::size_t>(edge_count(n))) throw PreconditionError("weight vector size mismatch");
  for (const Rational& w : weights) {
    if (w < 0) throw PreconditionError("negative capacity");
  }
  ScaledIntegers scaled = scale_to_integers(weights, weights.size());
  if (!scaled.fits) throw LimitError("capacities do not fit 62-bit scaled integers");
  scale_ = scaled.scale;
  cap_ = dense_square(n, scaled);
}

FlowNetwork FlowNetwork::merged(int a, int b) const {
  std::vector<std::int64_t> cap = cap_;
  for (int v = 0; v < n_; ++v) {
    if (v == a || v == b) continue;
    const std::int64_t sum = cap[static_cast<std::size_t>(a) * n_ + v] + cap[static_cast<std::size_t>(b) * n_ + v];
    cap[static_cast<std::size_t>(a) * n_ + v] = sum;
    cap[static_cast<std::size_t>(v) * n_ + a] = sum;
    cap[static_cast<std::size_t>(b) * n_ + v] = 0;
    cap[static_cast<std::size_t>(v) * n_ + b] = 0;
  }
  cap[static_cast<std::size_t>(a) * n_ + b] = 0;
  cap[static_cast<std::size_t>(b) * n_ + a] = 0;
  return FlowNetwork(n_, scale_, std::move(cap));
}

FlowNetwork::Cut FlowNetwork::min_cut(int source, int sink) const {
  if (source == sink) throw PreconditionError("min_cut needs distinct terminals");
  const std::size_t n = static_cast<std::size_t>(n_);
  std::vector<std::int64_t> residual = cap_;
  std::vector<int> level(n);
  std::vector<std::size_t> next(n);
  std::int64_t flow = 0;

  auto bfs = [&] {
    std::fill(level.begin(), level.end(), -1);
    std::queue<int> q;
    level[source] = 0;
    q.push(source);
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      for (int w = 0; w < n_; ++w) {
        if (level[w] < 0 && residual[v * n + w] > 0) {
          level[w] = level[v] + 1;
          q.push(w);
        }
      }
    }
    return level[sink] >= 0;
  };

  // Iterative blocking-flow DFS.
  auto augment = [&](auto&& self, int v, std::int64_t pushed) -> std::int64_t {
    if (v == sink) return pushed;
    for (; next[v] < n; ++next[v]) {
      const int w = static_cast<int>(next[v]);
      std::int64_t& r = residual[v * n + w];
      if (r <= 0 || level[w] != level[v] + 1) continue;
      const std::int64_t got = self(self, w, std::min(pushed, r));
      if (got > 0) {
        r -= got;
        residual[w * n + v] += got;
        return got;
      }
    }
    return 0;
  };

  while (bfs()) {
    std::fill(next.begin(), next.end(), 0);
    while (const std::int64_t got = augment(augment, source, std::numeric_limits<std::int64_t>::max())) flow += got;
  }

  Cut cut;
  cut.value = Rational(mpz_class(static_cast<long>(flow)), scale_);
  cut.value.canonicalize();
  cut.source_side.assign(n, 0);
  std::vector<int> stack{source};
  cut.source_side[source] = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w = 0; w < n_; ++w) {
      if (!cut.source_side[w] && residual[v * n + w] > 0) {
        cut.source_side[w] = 1;
        stack.push_back(w);
      }
    }
  }
  return cut;
}

}  // namespace pathtsp
