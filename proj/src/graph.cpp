#include "fast/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <queue>
#include <sstream>

namespace fast {

Graph::Graph(std::vector<Label> labels, const std::vector<std::pair<VertexId, VertexId>>& edges)
    : labels_(std::move(labels)) {
    const std::size_t n = labels_.size();
    std::vector<std::vector<VertexId>> adj(n);
    for (auto [a, b] : edges) {
        if (a >= n || b >= n) throw std::invalid_argument("edge references unknown vertex");
        if (a == b) throw std::invalid_argument("self-loop on vertex " + std::to_string(a));
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    offsets_.assign(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v) {
        auto& list = adj[v];
        std::sort(list.begin(), list.end());
        if (std::adjacent_find(list.begin(), list.end()) != list.end())
            throw std::invalid_argument("duplicate edge at vertex " + std::to_string(v));
        offsets_[v + 1] = offsets_[v] + list.size();
        max_degree_ = std::max(max_degree_, list.size());
    }
    adjacency_.reserve(offsets_[n]);
    for (auto& list : adj) adjacency_.insert(adjacency_.end(), list.begin(), list.end());
    edge_count_ = edges.size();

    for (Label l : labels_) label_count_ = std::max<std::size_t>(label_count_, std::size_t{l} + 1);
    label_offsets_.assign(label_count_ + 1, 0);
    for (Label l : labels_) ++label_offsets_[l + 1];
    for (std::size_t l = 0; l < label_count_; ++l) label_offsets_[l + 1] += label_offsets_[l];
    by_label_.resize(n);
    std::vector<std::size_t> fill(label_offsets_.begin(), label_offsets_.end() - 1);
    for (VertexId v = 0; v < n; ++v) by_label_[fill[labels_[v]]++] = v;
}

bool Graph::has_edge(VertexId a, VertexId b) const {
    if (degree(a) > degree(b)) std::swap(a, b);
    auto list = neighbors(a);
    return std::binary_search(list.begin(), list.end(), b);
}

std::span<const VertexId> Graph::vertices_with_label(Label l) const {
    if (l >= label_count_) return {};
    return {by_label_.data() + label_offsets_[l], by_label_.data() + label_offsets_[l + 1]};
}

std::vector<std::pair<VertexId, VertexId>> Graph::edge_list() const {
    std::vector<std::pair<VertexId, VertexId>> out;
    out.reserve(edge_count_);
    for (VertexId v = 0; v < vertex_count(); ++v)
        for (VertexId w : neighbors(v))
            if (v < w) out.emplace_back(v, w);
    return out;
}

bool Graph::connected() const {
    if (vertex_count() == 0) return true;
    std::vector<bool> seen(vertex_count(), false);
    std::queue<VertexId> frontier;
    frontier.push(0);
    seen[0] = true;
    std::size_t reached = 1;
    while (!frontier.empty()) {
        VertexId v = frontier.front();
        frontier.pop();
        for (VertexId w : neighbors(v)) {
            if (!seen[w]) {
                seen[w] = true;
                ++reached;
                frontier.push(w);
            }
        }
    }
    return reached == vertex_count();
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

std::uint64_t parse_number(std::string_view field, std::size_t line_no) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw GraphParseError(line_no, "expected a non-negative integer, got '" + std::string(field) + "'");
    return value;
}

}  // namespace

Graph parse_graph(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    std::uint64_t declared_vertices = 0;
    std::uint64_t declared_edges = 0;
    std::vector<Label> labels;
    std::vector<std::uint64_t> declared_degree;
    std::vector<bool> defined;
    std::vector<std::size_t> defined_on;
    std::size_t vertex_lines = 0;
    std::vector<std::pair<VertexId, VertexId>> edges;
    std::vector<std::vector<VertexId>> seen_adj;

    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view(line);
        if (auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
        auto fields = split_fields(view);
        if (fields.empty()) continue;

        if (fields[0] == "t") {
            if (have_header) throw GraphParseError(line_no, "duplicate header");
            if (fields.size() != 3) throw GraphParseError(line_no, "header must be 't <|V|> <|E|>'");
            declared_vertices = parse_number(fields[1], line_no);
            declared_edges = parse_number(fields[2], line_no);
            if (declared_vertices > std::numeric_limits<VertexId>::max())
                throw GraphParseError(line_no, "too many vertices");
            labels.assign(declared_vertices, 0);
            declared_degree.assign(declared_vertices, 0);
            defined.assign(declared_vertices, false);
            defined_on.assign(declared_vertices, 0);
            seen_adj.assign(declared_vertices, {});
            have_header = true;
        } else if (!have_header) {
            throw GraphParseError(line_no, "record before 't' header");
        } else if (fields[0] == "v") {
            if (fields.size() != 4) throw GraphParseError(line_no, "vertex record must be 'v <id> <label> <degree>'");
            auto id = parse_number(fields[1], line_no);
            auto label = parse_number(fields[2], line_no);
            auto degree = parse_number(fields[3], line_no);
            if (id >= declared_vertices)
                throw GraphParseError(line_no, "vertex id " + std::to_string(id) + " outside 0.." +
                                                   std::to_string(declared_vertices) + "-1");
            if (defined[id]) throw GraphParseError(line_no, "duplicate vertex " + std::to_string(id));
            if (label > std::numeric_limits<Label>::max()) throw GraphParseError(line_no, "label too large");
            defined[id] = true;
            defined_on[id] = line_no;
            labels[id] = static_cast<Label>(label);
            declared_degree[id] = degree;
            ++vertex_lines;
        } else if (fields[0] == "e") {
            if (fields.size() != 3) throw GraphParseError(line_no, "edge record must be 'e <src> <dst>'");
            auto a = parse_number(fields[1], line_no);
            auto b = parse_number(fields[2], line_no);
            if (a >= declared_vertices || b >= declared_vertices)
                throw GraphParseError(line_no, "edge references unknown vertex");
            if (a == b) throw GraphParseError(line_no, "self-loop on vertex " + std::to_string(a));
            auto& list = seen_adj[std::min(a, b)];
            auto hi = static_cast<VertexId>(std::max(a, b));
            auto pos = std::lower_bound(list.begin(), list.end(), hi);
            if (pos != list.end() && *pos == hi)
                throw GraphParseError(line_no, "duplicate edge " + std::to_string(a) + "-" + std::to_string(b));
            list.insert(pos, hi);
            edges.emplace_back(static_cast<VertexId>(a), static_cast<VertexId>(b));
        } else {
            throw GraphParseError(line_no, "unknown record type '" + std::string(fields[0]) + "'");
        }
    }

    if (!have_header) throw GraphParseError(line_no, "missing 't' header");
    if (vertex_lines != declared_vertices)
        throw GraphParseError(0, "header declares " + std::to_string(declared_vertices) + " vertices, found " +
                                     std::to_string(vertex_lines));
    if (edges.size() != declared_edges)
        throw GraphParseError(0, "header declares " + std::to_string(declared_edges) + " edges, found " +
                                     std::to_string(edges.size()));

    Graph g(std::move(labels), edges);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (declared_degree[v] != g.degree(v))
            throw GraphParseError(defined_on[v], "vertex " + std::to_string(v) + " declares degree " +
                                                     std::to_string(declared_degree[v]) + ", has " +
                                                     std::to_string(g.degree(v)));
    }
    return g;
}

Graph load_graph(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file " + path.string());
    return parse_graph(in);
}

void write_graph(std::ostream& out, const Graph& g) {
    out << "t " << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        out << "v " << v << ' ' << g.label(v) << ' ' << g.degree(v) << '\n';
    for (auto [a, b] : g.edge_list()) out << "e " << a << ' ' << b << '\n';
}

void save_graph(const std::filesystem::path& path, const Graph& g) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write graph file " + path.string());
    write_graph(out, g);
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::vector<VertexId> candidates_by_local_features(const Graph& data, const Graph& query, VertexId u) {
    std::vector<VertexId> out;
    const std::size_t need = query.degree(u);
    for (VertexId v : data.vertices_with_label(query.label(u)))
        if (data.degree(v) >= need) out.push_back(v);
    return out;
}

}  // namespace fast
