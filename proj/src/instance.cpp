#include "pathtsp/instance.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <optional>
#include <random>
#include <sstream>

#include "pathtsp/errors.hpp"

namespace pathtsp {

Edge make_edge(int a, int b) {
  if (a == b) throw PreconditionError("edge endpoints must differ (" + std::to_string(a) + ")");
  return a < b ? Edge{a, b} : Edge{b, a};
}

Edge edge_at(int n, int index) {
  int u = 0;
  while (index >= n - 1 - u) {
    index -= n - 1 - u;
    ++u;
  }
  return Edge{u, u + 1 + index};
}

Rational EdgeVector::operator[](Edge e) const {
  const auto it = entries_.find(e);
  return it == entries_.end() ? Rational(0) : it->second;
}

void EdgeVector::set(Edge e, const Rational& value) {
  if (value == 0) {
    entries_.erase(e);
  } else {
    entries_[e] = value;
  }
}

void EdgeVector::add(Edge e, const Rational& delta) {
  if (delta == 0) return;
  auto [it, inserted] = entries_.try_emplace(e, delta);
  if (!inserted) {
    it->second += delta;
    if (it->second == 0) entries_.erase(it);
  }
}

Rational EdgeVector::sum(std::span<const Edge> edges) const {
  Rational acc = 0;
  for (Edge e : edges) acc += (*this)[e];
  return acc;
}

Rational EdgeVector::total() const {
  Rational acc = 0;
  for (const auto& [e, v] : entries_) acc += v;
  return acc;
}

Rational EdgeVector::cut_load(std::span<const char> in_set) const {
  Rational acc = 0;
  for (const auto& [e, v] : entries_) {
    if (crosses(e, in_set)) acc += v;
  }
  return acc;
}

std::vector<Edge> EdgeVector::support() const {
  std::vector<Edge> out;
  out.reserve(entries_.size());
  for (const auto& [e, v] : entries_) out.push_back(e);
  return out;
}

std::vector<Rational> EdgeVector::dense(int n) const {
  std::vector<Rational> out(static_cast<std::size_t>(edge_count(n)));
  for (const auto& [e, v] : entries_) {
    if (e.v >= n) throw PreconditionError("edge vector references a vertex outside [0,n)");
    out[edge_index(n, e)] = v;
  }
  return out;
}

Instance::Instance(int n, int s, int t, std::vector<Rational> cost_by_edge_index)
    : n_(n), s_(s), t_(t), cost_(std::move(cost_by_edge_index)) {
  if (n < 2) throw PreconditionError("instance needs at least 2 vertices");
  if (s < 0 || s >= n || t < 0 || t >= n) throw PreconditionError("s or t out of range");
  if (s == t) throw PreconditionError("s and t must be distinct");
  if (cost_.size() != static_cast<std::size_t>(edge_count(n))) {
    throw PreconditionError("cost table must cover every pair");
  }
  for (const Rational& c : cost_) {
    if (c < 0) throw PreconditionError("costs must be nonnegative");
  }
}

Rational Instance::cost_of(const EdgeVector& x) const {
  Rational acc = 0;
  for (const auto& [e, v] : x.entries()) acc += cost(e) * v;
  return acc;
}

Rational Instance::cost_of(std::span<const Edge> edges) const {
  Rational acc = 0;
  for (Edge e : edges) acc += cost(e);
  return acc;
}

std::vector<Triple> validate_metric(const Instance& inst) {
  std::vector<Triple> bad;
  const int n = inst.n();
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (v == u) continue;
      for (int w = 0; w < n; ++w) {
        if (w == u || w == v) continue;
        if (inst.cost(u, w) > inst.cost(u, v) + inst.cost(v, w)) bad.push_back({u, v, w});
      }
    }
  }
  return bad;
}

Instance metric_closure(int n, int s, int t, std::span<const std::pair<Edge, Rational>> edges) {
  std::vector<std::vector<std::optional<Rational>>> dist(
      static_cast<std::size_t>(n), std::vector<std::optional<Rational>>(static_cast<std::size_t>(n)));
  for (int v = 0; v < n; ++v) dist[v][v] = Rational(0);
  for (const auto& [e, w] : edges) {
    if (e.u < 0 || e.v >= n) throw PreconditionError("edge outside vertex range");
    if (w < 0) throw PreconditionError("negative edge length");
    auto& slot = dist[e.u][e.v];
    if (!slot || w < *slot) {
      slot = w;
      dist[e.v][e.u] = w;
    }
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      if (!dist[i][k]) continue;
      for (int j = 0; j < n; ++j) {
        if (!dist[k][j]) continue;
        Rational via = *dist[i][k] + *dist[k][j];
        if (!dist[i][j] || via < *dist[i][j]) dist[i][j] = std::move(via);
      }
    }
  }
  std::vector<Rational> cost(static_cast<std::size_t>(edge_count(n)));
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (!dist[u][v]) throw PreconditionError("graph is disconnected; metric closure undefined");
      cost[edge_index(n, {u, v})] = *dist[u][v];
    }
  }
  return Instance(n, s, t, std::move(cost));
}

namespace {

// Uniform integer in [lo, hi] from the raw engine output; independent of the
// standard library's distribution implementations.
long draw(std::mt19937_64& rng, long lo, long hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<long>(rng() % span);
}

}  // namespace

Instance random_metric_instance(int n, std::uint64_t seed) {
  if (n < 3) throw PreconditionError("random_metric_instance needs n >= 3");
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(n));
  std::vector<std::pair<Edge, Rational>> edges;
  switch (seed % 5) {
    case 0: {
      // Closure of a complete graph with random integer lengths.
      for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) edges.emplace_back(Edge{u, v}, Rational(draw(rng, 1, 50)));
      }
      break;
    }
    case 1: {
      // Distinct lattice points under the L1 norm.
      std::vector<std::pair<long, long>> pts;
      while (static_cast<int>(pts.size()) < n) {
        std::pair<long, long> p{draw(rng, 0, 12), draw(rng, 0, 12)};
        if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
      }
      for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
          const long d = std::labs(pts[u].first - pts[v].first) + std::labs(pts[u].second - pts[v].second);
          edges.emplace_back(Edge{u, v}, Rational(d));
        }
      }
      break;
    }
    case 3: {
      // Hop metric of a sparse connected graph: a random tree plus n/2 chords.
      for (int v = 1; v < n; ++v) edges.emplace_back(make_edge(static_cast<int>(draw(rng, 0, v - 1)), v), Rational(1));
      for (int i = 0; i < n / 2 + 1; ++i) {
        const int a = static_cast<int>(draw(rng, 0, n - 1));
        const int b = static_cast<int>(draw(rng, 0, n - 1));
        if (a != b) edges.emplace_back(make_edge(a, b), Rational(1));
      }
      break;
    }
    case 4: {
      // Costs 1 and 2: cheap edges form a random graph of average degree about 3.
      for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
          edges.emplace_back(Edge{u, v}, Rational(draw(rng, 0, n - 2) < 3 ? 1 : 2));
        }
      }
      break;
    }
    default: {
      // Closure of a sparse connected graph with small lengths.
      for (int v = 1; v < n; ++v) {
        const int parent = static_cast<int>(draw(rng, 0, v - 1));
        edges.emplace_back(make_edge(parent, v), Rational(draw(rng, 1, 4)));
      }
      const int extra = n;
      for (int i = 0; i < extra; ++i) {
        const int a = static_cast<int>(draw(rng, 0, n - 1));
        const int b = static_cast<int>(draw(rng, 0, n - 1));
        if (a != b) edges.emplace_back(make_edge(a, b), Rational(draw(rng, 1, 4)));
      }
      break;
    }
  }
  return metric_closure(n, 0, n - 1, edges);
}

std::string emit_instance(const Instance& inst) {
  std::ostringstream out;
  out << inst.n() << ' ' << inst.s() << ' ' << inst.t() << '\n';
  for (int u = 0; u < inst.n(); ++u) {
    for (int v = u + 1; v < inst.n(); ++v) out << u << ' ' << v << ' ' << to_string(inst.cost(u, v)) << '\n';
  }
  return out.str();
}

namespace {

std::vector<std::string> tokens_of(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

int parse_int(const std::string& tok) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(tok, &used);
  } catch (const std::exception&) {
    throw ParseError("not an integer: '" + tok + "'");
  }
  if (used != tok.size()) throw ParseError("not an integer: '" + tok + "'");
  return value;
}

}  // namespace

Instance parse_instance(std::string_view text, bool closure) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<std::vector<int>> header;
  std::vector<std::pair<Edge, Rational>> edges;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto toks = tokens_of(line);
    if (toks.empty()) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (!header) {
      if (toks.size() != 3) throw ParseError(where + "expected header 'n s t'");
      header = std::vector<int>{parse_int(toks[0]), parse_int(toks[1]), parse_int(toks[2])};
      const int n = (*header)[0];
      if (n < 2 || (*header)[1] < 0 || (*header)[1] >= n || (*header)[2] < 0 || (*header)[2] >= n ||
          (*header)[1] == (*header)[2]) {
        throw ParseError(where + "invalid header");
      }
      continue;
    }
    if (toks.size() != 3) throw ParseError(where + "expected 'u v cost'");
    const int n = (*header)[0];
    const int a = parse_int(toks[0]);
    const int b = parse_int(toks[1]);
    if (a < 0 || a >= n || b < 0 || b >= n || a == b) throw ParseError(where + "bad endpoints");
    Rational c = parse_rational(toks[2]);
    if (c < 0) throw ParseError(where + "negative cost");
    edges.emplace_back(make_edge(a, b), std::move(c));
  }
  if (!header) throw ParseError("empty instance file");
  const int n = (*header)[0];
  std::sort(edges.begin(), edges.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (edges[i].first == edges[i - 1].first) {
      throw ParseError("duplicate pair " + std::to_string(edges[i].first.u) + " " + std::to_string(edges[i].first.v));
    }
  }
  if (closure) {
    try {
      return metric_closure(n, (*header)[1], (*header)[2], edges);
    } catch (const PreconditionError& e) {
      throw ParseError(e.what());
    }
  }
  if (edges.size() != static_cast<std::size_t>(edge_count(n))) {
    throw ParseError("dense instance is missing " + std::to_string(edge_count(n) - static_cast<int>(edges.size())) +
                     " pairs (use closure completion)");
  }
  std::vector<Rational> cost;
  cost.reserve(edges.size());
  for (auto& [e, c] : edges) cost.push_back(std::move(c));
  return Instance(n, (*header)[1], (*header)[2], std::move(cost));
}

std::string instance_digest(const Instance& inst) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : emit_instance(inst)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << contents;
}

}  // namespace pathtsp
