#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fast {

using VertexId = std::uint32_t;
using Label = std::uint32_t;

/// Image of each query vertex, indexed by position in the matching order.
using Embedding = std::vector<VertexId>;

/// Raised by the graph reader. Carries the 1-based line number of the
/// offending record (0 when the problem is only detectable at end of file).
class GraphParseError : public std::runtime_error {
public:
    GraphParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Vertex-labeled undirected simple graph. Immutable once built; adjacency
/// lists are sorted ascending.
class Graph {
public:
    Graph() = default;

    /// Builds from labels and an undirected edge list. Throws
    /// std::invalid_argument on self-loops, duplicates or out-of-range ids.
    Graph(std::vector<Label> labels, const std::vector<std::pair<VertexId, VertexId>>& edges);

    std::size_t vertex_count() const noexcept { return labels_.size(); }
    std::size_t edge_count() const noexcept { return edge_count_; }
    std::size_t label_count() const noexcept { return label_count_; }

    Label label(VertexId v) const { return labels_[v]; }
    std::span<const Label> labels() const noexcept { return labels_; }

    std::span<const VertexId> neighbors(VertexId v) const {
        return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
    }
    std::size_t degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }
    std::size_t max_degree() const noexcept { return max_degree_; }

    bool has_edge(VertexId a, VertexId b) const;

    /// Vertices carrying label l, ascending. Empty for labels outside the alphabet.
    std::span<const VertexId> vertices_with_label(Label l) const;

    /// Edges as (src, dst) pairs with src < dst, in ascending order.
    std::vector<std::pair<VertexId, VertexId>> edge_list() const;

    bool connected() const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::vector<Label> labels_;
    std::vector<std::size_t> offsets_{0};
    std::vector<VertexId> adjacency_;
    std::size_t edge_count_ = 0;
    std::size_t label_count_ = 0;
    std::size_t max_degree_ = 0;
    std::vector<std::size_t> label_offsets_{0};
    std::vector<VertexId> by_label_;
};

Graph parse_graph(std::istream& in);
Graph load_graph(const std::filesystem::path& path);

void write_graph(std::ostream& out, const Graph& g);
void save_graph(const std::filesystem::path& path, const Graph& g);

/// { v | l_G(v) = l_q(u) and d_G(v) >= d_q(u) }, ascending.
std::vector<VertexId> candidates_by_local_features(const Graph& data, const Graph& query, VertexId u);

}  // namespace fast
