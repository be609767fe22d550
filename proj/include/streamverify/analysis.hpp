#pragma once

#include "streamverify/ast.hpp"

#include <optional>
#include <string>
#include <vector>

namespace streamverify {

/// One syntactic stream access: `from` reads `to` at offset `weight`.
struct DependencyEdge {
  std::string from;
  std::string to;
  std::int64_t weight = 0;

  bool operator==(const DependencyEdge&) const = default;
};

struct DependencyGraph {
  /// Inputs first, then outputs, in declaration order.
  std::vector<std::string> nodes;
  std::vector<DependencyEdge> edges;

  std::size_t index_of(const std::string& name) const;
};

/// A simple cycle as the sequence of edges walked.
struct Cycle {
  std::vector<DependencyEdge> edges;

  std::int64_t total() const;
  std::string describe() const;
};

/// Evidence of a zero-weight closed walk: either one zero cycle, or a
/// non-positive and a non-negative cycle in the same strongly connected part
/// (repeating them suitably cancels the weights).
struct ZeroWalk {
  std::vector<Cycle> cycles;

  std::string describe() const;
};

struct UnfoldingWindow {
  std::int64_t past = 0;    // w_p
  std::int64_t future = 0;  // w_f

  bool operator==(const UnfoldingWindow&) const = default;
};

/// Edges from output expressions; annotations do not contribute.
DependencyGraph build_graph(const Specification& spec);

std::optional<ZeroWalk> find_zero_walk(const DependencyGraph& g);

/// Throws SpecError naming the streams of a zero-weight cycle.
void check_well_formed(const DependencyGraph& g);

/// Layers of output names such that every weight-0 dependency lies in an
/// earlier layer. Within a layer, declaration order.
std::vector<std::vector<std::string>> evaluation_order(const DependencyGraph& g, const Specification& spec);

/// Largest past and future offsets over outputs and annotations.
UnfoldingWindow compute_window(const Specification& spec);

/// Graphviz rendering.
std::string to_dot(const DependencyGraph& g, const Specification& spec);

}  // namespace streamverify
