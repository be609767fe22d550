#include "streamverify/analysis.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace streamverify {

std::size_t DependencyGraph::index_of(const std::string& name) const {
  auto it = std::find(nodes.begin(), nodes.end(), name);
  return static_cast<std::size_t>(it - nodes.begin());
}

std::int64_t Cycle::total() const {
  std::int64_t sum = 0;
  for (const auto& e : edges) sum += e.weight;
  return sum;
}

std::string Cycle::describe() const {
  std::ostringstream os;
  for (const auto& e : edges) os << e.from << " -(" << (e.weight > 0 ? "+" : "") << e.weight << ")-> ";
  if (!edges.empty()) os << edges.front().from;
  os << " [total " << total() << "]";
  return os.str();
}

std::string ZeroWalk::describe() const {
  if (cycles.size() == 1) return "zero-weight dependency cycle " + cycles.front().describe();
  return "dependency cycles of opposite weight share streams, so a zero-weight walk exists: " +
         cycles.front().describe() + " and " + cycles.back().describe();
}

DependencyGraph build_graph(const Specification& spec) {
  DependencyGraph g;
  for (const auto& i : spec.inputs) g.nodes.push_back(i.name);
  for (const auto& o : spec.outputs) g.nodes.push_back(o.name);
  for (const auto& o : spec.outputs)
    visit(o.expr, [&](const Expr& e) {
      if (e.kind == Expr::Kind::StreamRef) g.edges.push_back({o.name, e.name, 0});
      if (e.kind == Expr::Kind::Offset) g.edges.push_back({o.name, e.name, e.offset});
    });
  return g;
}

namespace {

// Tarjan; returns the component id of every node.
std::vector<int> components(const DependencyGraph& g) {
  const std::size_t n = g.nodes.size();
  std::vector<std::vector<std::size_t>> succ(n);
  for (const auto& e : g.edges) succ[g.index_of(e.from)].push_back(g.index_of(e.to));
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  int counter = 0, comp_count = 0;
  std::function<void(std::size_t)> strong = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t w : succ[v]) {
      if (index[w] < 0) {
        strong(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp[w] = comp_count;
      } while (w != v);
      ++comp_count;
    }
  };
  for (std::size_t v = 0; v < n; ++v)
    if (index[v] < 0) strong(v);
  return comp;
}

// A simple cycle whose weight has the given sign or is zero (sign = +1 finds
// weight <= 0 after negation, i.e. weight >= 0). Integer weights are scaled
// so that "total <= 0" becomes a strictly negative cycle for Bellman-Ford.
std::optional<Cycle> non_strict_cycle(const std::vector<DependencyEdge>& edges, const std::vector<std::string>& nodes,
                                      int sign) {
  const std::int64_t n = static_cast<std::int64_t>(nodes.size());
  auto at = [&](const std::string& s) {
    return static_cast<std::size_t>(std::find(nodes.begin(), nodes.end(), s) - nodes.begin());
  };
  std::vector<std::int64_t> dist(nodes.size(), 0);
  std::vector<int> pred(nodes.size(), -1);
  std::optional<std::size_t> changed;
  for (std::int64_t round = 0; round < n; ++round) {
    changed.reset();
    for (std::size_t k = 0; k < edges.size(); ++k) {
      std::size_t u = at(edges[k].from), v = at(edges[k].to);
      std::int64_t w = -sign * edges[k].weight * (n + 1) - 1;
      if (dist[u] + w < dist[v]) {
        dist[v] = dist[u] + w;
        pred[v] = static_cast<int>(k);
        changed = v;
      }
    }
    if (!changed) return std::nullopt;
  }
  std::size_t x = *changed;
  for (std::int64_t i = 0; i < n; ++i) x = at(edges[pred[x]].from);
  Cycle c;
  std::size_t y = x;
  do {
    c.edges.push_back(edges[pred[y]]);
    y = at(edges[pred[y]].from);
  } while (y != x);
  std::reverse(c.edges.begin(), c.edges.end());
  return c;
}

}  // namespace

std::optional<ZeroWalk> find_zero_walk(const DependencyGraph& g) {
  std::vector<int> comp = components(g);
  int count = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
  for (int c = 0; c < count; ++c) {
    std::vector<std::string> nodes;
    for (std::size_t v = 0; v < g.nodes.size(); ++v)
      if (comp[v] == c) nodes.push_back(g.nodes[v]);
    std::vector<DependencyEdge> inner;
    for (const auto& e : g.edges)
      if (comp[g.index_of(e.from)] == c && comp[g.index_of(e.to)] == c) inner.push_back(e);
    if (inner.empty()) continue;
    auto low = non_strict_cycle(inner, nodes, 1);
    if (!low) continue;
    if (low->total() == 0) return ZeroWalk{{*low}};
    auto high = non_strict_cycle(inner, nodes, -1);
    if (!high) continue;
    if (high->total() == 0) return ZeroWalk{{*high}};
    return ZeroWalk{{*low, *high}};
  }
  return std::nullopt;
}

void check_well_formed(const DependencyGraph& g) {
  if (auto walk = find_zero_walk(g)) throw SpecError({}, "ill-formed specification: " + walk->describe());
}

std::vector<std::vector<std::string>> evaluation_order(const DependencyGraph& g, const Specification& spec) {
  // Longest path over weight-0 edges between outputs.
  std::map<std::string, int> layer;
  for (const auto& o : spec.outputs) layer[o.name] = 0;
  for (std::size_t round = 0; round <= spec.outputs.size(); ++round) {
    bool changed = false;
    for (const auto& e : g.edges) {
      if (e.weight != 0 || !layer.count(e.to)) continue;
      if (layer[e.from] < layer[e.to] + 1) {
        layer[e.from] = layer[e.to] + 1;
        changed = true;
      }
    }
    if (!changed) break;
  }
  std::vector<std::vector<std::string>> layers;
  for (const auto& o : spec.outputs) {
    auto l = static_cast<std::size_t>(layer[o.name]);
    if (layers.size() <= l) layers.resize(l + 1);
    layers[l].push_back(o.name);
  }
  return layers;
}

UnfoldingWindow compute_window(const Specification& spec) {
  UnfoldingWindow w;
  auto scan = [&](const ExprPtr& root) {
    visit(root, [&](const Expr& e) {
      if (e.kind != Expr::Kind::Offset && e.kind != Expr::Kind::RangeFold) return;
      std::int64_t lo = e.offset, hi = e.kind == Expr::Kind::RangeFold ? e.offset_to : e.offset;
      w.past = std::max(w.past, -lo);
      w.future = std::max(w.future, hi);
    });
  };
  for (const auto& o : spec.outputs) scan(o.expr);
  for (const auto& a : spec.assumptions) scan(a.formula);
  for (const auto& a : spec.assertions) scan(a.formula);
  return w;
}

std::string to_dot(const DependencyGraph& g, const Specification& spec) {
  std::ostringstream os;
  os << "digraph dependencies {\n";
  for (const auto& n : g.nodes)
    os << "  \"" << n << "\" [shape=" << (spec.find_input(n) ? "box" : "ellipse") << "];\n";
  for (const auto& e : g.edges)
    os << "  \"" << e.from << "\" -> \"" << e.to << "\" [label=\"" << e.weight << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace streamverify
