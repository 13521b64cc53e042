#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace graphlim {

// Exact subgraph counts. 128 bits cover every desk-scale input (the count is
// bounded by n^f, and counting refuses inputs with n^f >= 2^126).
using bigcount = unsigned __int128;

std::string to_string(bigcount value);
double to_double(bigcount value);

// Finite simple undirected graph on vertices 0..n-1. Adjacency is kept as
// one bitset row per vertex; rows stay symmetric with an empty diagonal.
// Immutable after construction.
class Graph {
public:
    Graph() = default;
    Graph(int n, const std::vector<std::pair<int, int>>& edges);

    int n() const { return n_; }
    std::int64_t edge_count() const { return edge_count_; }
    bool has_edge(int u, int v) const;
    int degree(int v) const { return degrees_.empty() ? 0 : degrees_[v]; }

    // Bitset row of v (words() 64-bit words, bit u set iff uv is an edge).
    const std::uint64_t* row(int v) const { return rows_.data() + static_cast<std::size_t>(v) * words_; }
    int words() const { return words_; }

    std::vector<std::pair<int, int>> edges() const; // sorted, u < v

private:
    int n_ = 0;
    int words_ = 0;
    std::int64_t edge_count_ = 0;
    std::vector<std::uint64_t> rows_;
    std::vector<int> degrees_;
};

// Small labelled pattern graph on vertices 1..f (stored 0-based). Patterns
// drive counting and the density functionals, so f stays small (<= 12).
class PatternGraph {
public:
    PatternGraph() = default;
    PatternGraph(int f, const std::vector<std::pair<int, int>>& edges, std::string label = "");

    int f() const { return f_; }
    int e() const { return static_cast<int>(edges_.size()); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    bool has_edge(int i, int j) const { return (adj_[i] >> j) & 1u; }
    int degree(int i) const { return deg_[i]; }
    const std::string& label() const { return label_; }

    PatternGraph complement() const;

    // Edge density e(F)/C(f,2); 0 for f < 2.
    double edge_density() const;

private:
    int f_ = 0;
    std::vector<std::pair<int, int>> edges_; // sorted, i < j
    std::vector<std::uint32_t> adj_;
    std::vector<int> deg_;
    std::string label_;
};

// Built-in patterns. star(k) is S_k = K_{1,k} with the centre as vertex 1.
PatternGraph pattern_k2();
PatternGraph pattern_p3();
PatternGraph pattern_k3();
PatternGraph pattern_c4();
PatternGraph pattern_c5();
PatternGraph pattern_k4();
PatternGraph pattern_star(int k);
// Resolves "K2", "P3", "K3", "C4", "C5", "K4", "S<k>"; throws on unknown names.
PatternGraph pattern_by_name(const std::string& name);

// Vertex-set constraint for counting: none, one common set U, or one set per
// pattern vertex (U_1, ..., U_f).
struct VertexConstraint {
    enum class Mode { none, single, per_vertex };

    Mode mode = Mode::none;
    std::vector<std::vector<int>> sets; // 1 set (single) or f sets (per_vertex)

    static VertexConstraint unconstrained() { return {}; }
    static VertexConstraint single(std::vector<int> u);
    static VertexConstraint per_vertex(std::vector<std::vector<int>> us);
};

// Edge-list text format: first non-comment line is n, then one "u v" line per
// edge; '#' starts a comment. Throws std::invalid_argument with the line
// number on malformed lines, out-of-range indices, loops and duplicates.
Graph parse_graph(const std::string& text);
PatternGraph parse_pattern(const std::string& text, std::string label = "");

// Canonical serialization: "n" followed by sorted "u v" lines.
std::string to_edge_list(const Graph& g);

Graph complement(const Graph& g);

// G(n,p) with the documented SplitMix64 stream: pairs (i,j), i<j, visited in
// row-major order; the pair is an edge iff the next draw is < p.
Graph gen_gnp(int n, double p, std::uint64_t seed);

// Parts {0..a-1} and {a..a+b-1}.
Graph gen_complete_bipartite(int a, int b);

// Exact number of injective maps phi: V(F) -> V(G) that preserve adjacency
// (and non-adjacency when induced) and land inside the constraint sets.
// Backtracks over pattern vertices in decreasing-degree order, pruning each
// level with bitset intersections.
bigcount count_subgraphs(const PatternGraph& f, const Graph& g,
                         const VertexConstraint& constraint, bool induced);

// N(F,G) / (n)_f; requires |G| >= f.
double t_inj(const PatternGraph& f, const Graph& g, bool induced);

// Number of edges with exactly one endpoint in u.
std::int64_t cut_edges(const Graph& g, const std::vector<int>& u);

// (1/n) * sum_v (d_v/n)^k; requires a non-empty graph and k >= 1.
double degree_moment(const Graph& g, int k);

// n^-2 * sum_v |d_v - p*n|.
double regularity_deviation(const Graph& g, double p);

} // namespace graphlim
