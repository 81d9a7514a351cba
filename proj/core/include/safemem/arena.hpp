#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "safemem/alphabet.hpp"

namespace safemem {

enum class Owner { Eve, Adam };

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
  std::string joined() const;
};

// Unchecked mirror of the arena file format.
struct ArenaSpec {
  struct VertexSpec {
    std::string id;
    std::string owner; // "Eve" | "Adam"
  };
  struct EdgeSpec {
    std::string src, dst, color;
  };
  std::vector<std::string> alphabet;
  std::vector<VertexSpec> vertices;
  std::vector<EdgeSpec> edges;
};

// Every violation names the offending vertex or edge.
ValidationReport validate_arena(const ArenaSpec& spec);

struct Vertex {
  std::string id;
  Owner owner;
};

// Colored edge; src/dst index vertices, color indexes the alphabet.
struct Edge {
  int src, dst, color;
};

// A finite game graph without dead ends. Vertex and edge order is
// declaration order and is the tie-breaking order for all algorithms.
class Arena {
public:
  explicit Arena(const ArenaSpec& spec); // throws input_error on violations
  Arena(Alphabet alphabet, std::vector<Vertex> vertices, std::vector<Edge> edges);

  const Alphabet& alphabet() const { return alphabet_; }
  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  const Vertex& vertex(int v) const { return vertices_.at(v); }
  std::optional<int> vertex_index(const std::string& id) const;
  int vertex_index_or_throw(const std::string& id) const;
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const Edge& edge(int e) const { return edges_.at(e); }
  const std::vector<int>& out(int v) const { return out_.at(v); }
  std::optional<int> edge_index(int src, int dst, int color) const;

  ArenaSpec to_spec() const;

private:
  void compile();

  Alphabet alphabet_;
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, int> vertex_index_;
  std::vector<std::vector<int>> out_;
};

// A finite play: a start vertex and a sequence of consecutive edge indices.
struct Play {
  int start = 0;
  std::vector<int> edges;
};

} // namespace safemem
