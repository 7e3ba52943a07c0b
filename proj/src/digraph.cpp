#include "forestcalc/digraph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <utility>

namespace forestcalc {

WeightedDigraph::WeightedDigraph(std::vector<std::string> labels, std::vector<Arc> arcs)
    : labels_(std::move(labels)), arcs_(std::move(arcs)) {
  const int n = order();
  if (n < 2) throw Error("a digraph needs at least two vertices");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (labels_[i] == labels_[j]) throw Error("duplicate vertex label \"" + labels_[i] + "\"");

  out_.assign(n, {});
  in_.assign(n, {});
  weight_by_pair_.assign(static_cast<std::size_t>(n) * n, Rational(0));
  for (const Arc& a : arcs_) {
    if (a.tail < 0 || a.tail >= n || a.head < 0 || a.head >= n)
      throw Error("arc endpoint out of range");
    if (a.tail == a.head) throw Error("loop arc at vertex \"" + labels_[a.tail] + "\"");
    if (a.weight <= 0)
      throw Error("nonpositive weight on arc " + labels_[a.tail] + " -> " + labels_[a.head]);
    Rational& slot = weight_by_pair_[static_cast<std::size_t>(a.tail) * n + a.head];
    if (!slot.is_zero())
      throw Error("duplicate arc " + labels_[a.tail] + " -> " + labels_[a.head]);
    slot = a.weight;
    out_[a.tail].push_back(a.head);
    in_[a.head].push_back(a.tail);
  }
}

int WeightedDigraph::vertex(std::string_view label) const {
  for (int i = 0; i < order(); ++i)
    if (labels_[i] == label) return i;
  return -1;
}

const Rational& WeightedDigraph::weight(int tail, int head) const {
  return weight_by_pair_[static_cast<std::size_t>(tail) * order() + head];
}

std::vector<char> WeightedDigraph::reachable_set(int from) const {
  std::vector<char> seen(order(), 0);
  std::deque<int> queue{from};
  seen[from] = 1;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int w : out_[v])
      if (!seen[w]) {
        seen[w] = 1;
        queue.push_back(w);
      }
  }
  return seen;
}

bool WeightedDigraph::reachable(int from, int to) const { return reachable_set(from)[to] != 0; }

WeightedDigraph parse_digraph(std::string_view text) {
  std::vector<std::string> labels;
  std::vector<std::pair<std::string, std::string>> arc_labels;
  std::vector<Rational> arc_weights;

  auto intern = [&labels](const std::string& name) {
    for (int i = 0; i < static_cast<int>(labels.size()); ++i)
      if (labels[i] == name) return i;
    labels.push_back(name);
    return static_cast<int>(labels.size()) - 1;
  };

  std::istringstream lines{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tok;
    std::string t;
    while (fields >> t) tok.push_back(t);
    if (tok.empty()) continue;

    if (tok[0] == "vertex") {
      if (tok.size() != 2)
        throw ParseError("line " + std::to_string(lineno) + ": expected \"vertex NAME\"");
      intern(tok[1]);
      continue;
    }
    if (tok.size() != 3)
      throw ParseError("line " + std::to_string(lineno) + ": expected \"tail head weight\"");
    Rational w;
    try {
      w = parse_rational(tok[2]);
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    }
    intern(tok[0]);
    intern(tok[1]);
    arc_labels.emplace_back(tok[0], tok[1]);
    arc_weights.push_back(w);
  }

  std::vector<Arc> arcs;
  arcs.reserve(arc_labels.size());
  for (std::size_t i = 0; i < arc_labels.size(); ++i)
    arcs.push_back({intern(arc_labels[i].first), intern(arc_labels[i].second), arc_weights[i]});
  return WeightedDigraph(std::move(labels), std::move(arcs));
}

std::string to_edge_list(const WeightedDigraph& g) {
  std::ostringstream out;
  std::vector<char> mentioned(g.order(), 0);
  for (const Arc& a : g.arcs()) mentioned[a.tail] = mentioned[a.head] = 1;
  for (int v = 0; v < g.order(); ++v)
    if (!mentioned[v]) out << "vertex " << g.labels()[v] << "\n";
  for (const Arc& a : g.arcs())
    out << g.labels()[a.tail] << " " << g.labels()[a.head] << " " << rational_string(a.weight)
        << "\n";
  return out.str();
}

WeightedDigraph reverse(const WeightedDigraph& g) {
  std::vector<Arc> arcs;
  arcs.reserve(g.arcs().size());
  for (const Arc& a : g.arcs()) arcs.push_back({a.head, a.tail, a.weight});
  return WeightedDigraph(g.labels(), std::move(arcs));
}

WeightedDigraph with_arc_weight(const WeightedDigraph& g, int tail, int head,
                                const Rational& weight) {
  std::vector<Arc> arcs;
  bool replaced = false;
  for (const Arc& a : g.arcs()) {
    if (a.tail == tail && a.head == head) {
      arcs.push_back({tail, head, weight});
      replaced = true;
    } else {
      arcs.push_back(a);
    }
  }
  if (!replaced) arcs.push_back({tail, head, weight});
  return WeightedDigraph(g.labels(), std::move(arcs));
}

WeightedDigraph scale_weights(const WeightedDigraph& g, const Rational& c) {
  std::vector<Arc> arcs;
  arcs.reserve(g.arcs().size());
  for (const Arc& a : g.arcs()) arcs.push_back({a.tail, a.head, a.weight * c});
  return WeightedDigraph(g.labels(), std::move(arcs));
}

namespace {

// Iterative Tarjan; returns component id per vertex, components numbered in
// reverse topological order of the condensation.
std::vector<int> strong_components(const WeightedDigraph& g, int& count) {
  const int n = g.order();
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<char> on_stack(n, 0);
  std::vector<int> stack;
  int next_index = 0;
  count = 0;

  struct Frame {
    int v;
    std::size_t child;
  };
  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      Frame& f = call.back();
      const auto& succ = g.out_neighbors(f.v);
      if (f.child < succ.size()) {
        int w = succ[f.child++];
        if (index[w] == -1) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        if (low[f.v] == index[f.v]) {
          while (true) {
            int w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            comp[w] = count;
            if (w == f.v) break;
          }
          ++count;
        }
        int v = f.v;
        call.pop_back();
        if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      }
    }
  }
  return comp;
}

}  // namespace

StructureReport analyze_structure(const WeightedDigraph& g) {
  const int n = g.order();
  StructureReport rep;

  // Weak components via union-find over the underlying undirected edges.
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  auto find = [&parent](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const Arc& a : g.arcs()) parent[find(a.tail)] = find(a.head);
  std::map<int, std::vector<int>> weak;
  for (int v = 0; v < n; ++v) weak[find(v)].push_back(v);
  for (auto& [root, members] : weak) rep.weak_components.push_back(members);

  int scc_count = 0;
  std::vector<int> comp = strong_components(g, scc_count);
  std::vector<char> has_in(scc_count, 0), has_out(scc_count, 0);
  for (const Arc& a : g.arcs()) {
    if (comp[a.tail] != comp[a.head]) {
      has_in[comp[a.head]] = 1;
      has_out[comp[a.tail]] = 1;
    }
  }

  std::vector<std::vector<int>> members(scc_count);
  for (int v = 0; v < n; ++v) members[comp[v]].push_back(v);

  std::vector<int> source_ids, sink_count;
  for (int c = 0; c < scc_count; ++c) {
    if (!has_in[c]) source_ids.push_back(c);
    if (!has_out[c]) sink_count.push_back(c);
  }
  rep.out_dim = static_cast<int>(source_ids.size());
  rep.in_dim = static_cast<int>(sink_count.size());

  std::sort(source_ids.begin(), source_ids.end(),
            [&members](int a, int b) { return members[a].front() < members[b].front(); });
  for (int c : source_ids) rep.undominated_knots.push_back(members[c]);
  for (const auto& knot : rep.undominated_knots)
    rep.k_tilde.insert(rep.k_tilde.end(), knot.begin(), knot.end());
  std::sort(rep.k_tilde.begin(), rep.k_tilde.end());

  // K_i+ = reachable from K_i and from no other knot.
  std::vector<std::vector<char>> reach;
  for (const auto& knot : rep.undominated_knots) {
    std::vector<char> seen(n, 0);
    for (int v : knot) {
      auto r = g.reachable_set(v);
      for (int w = 0; w < n; ++w) seen[w] |= r[w];
    }
    reach.push_back(std::move(seen));
  }
  for (std::size_t i = 0; i < reach.size(); ++i) {
    std::vector<int> basin;
    for (int v = 0; v < n; ++v) {
      if (!reach[i][v]) continue;
      bool exclusive = true;
      for (std::size_t j = 0; j < reach.size(); ++j)
        if (j != i && reach[j][v]) exclusive = false;
      if (exclusive) basin.push_back(v);
    }
    rep.k_plus.push_back(std::move(basin));
  }
  return rep;
}

WeightedDigraph dimension_fixture(int n, int k, int k_prime) {
  if (n < 2) throw Error("dimension fixture needs n >= 2");
  if (k < 1 || k >= n || k_prime < 1 || k_prime >= n)
    throw Error("dimension fixture needs k, k' in 1..n-1");

  std::vector<std::string> labels;
  labels.reserve(n);
  for (int i = 1; i <= n; ++i) labels.push_back("v" + std::to_string(i));

  std::vector<Arc> arcs;
  const Rational one(1);
  if (k <= k_prime) {
    // Diverging star at vertex 0 with k'-k leaves, a path of n-k' further
    // vertices diverging from the root, k-1 isolated vertices.
    int next = 1;
    for (int leaf = 0; leaf < k_prime - k; ++leaf) arcs.push_back({0, next++, one});
    int prev = 0;
    for (int step = 0; step < n - k_prime; ++step) {
      arcs.push_back({prev, next, one});
      prev = next++;
    }
  } else {
    // Star converging to vertex 0 with k-k' leaves, a path of n-k further
    // vertices converging into the center, k'-1 isolated vertices.
    int next = 1;
    for (int leaf = 0; leaf < k - k_prime; ++leaf) arcs.push_back({next++, 0, one});
    for (int step = 0; step + 1 < n - k; ++step) {
      arcs.push_back({next, next + 1, one});
      ++next;
    }
    arcs.push_back({next++, 0, one});
  }
  return WeightedDigraph(std::move(labels), std::move(arcs));
}

}  // namespace forestcalc
