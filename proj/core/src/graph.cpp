#include "graphlim/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "graphlim/rng.hpp"

namespace graphlim {

std::string to_string(bigcount value) {
    if (value == 0) return "0";
    std::string out;
    while (value > 0) {
        out.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
        value /= 10;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

double to_double(bigcount value) {
    return static_cast<double>(value);
}

Graph::Graph(int n, const std::vector<std::pair<int, int>>& edges) : n_(n) {
    if (n < 0) throw std::invalid_argument("graph: negative vertex count");
    words_ = (n + 63) / 64;
    rows_.assign(static_cast<std::size_t>(n) * words_, 0);
    degrees_.assign(n, 0);
    for (auto [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw std::invalid_argument("graph: vertex index out of range");
        if (u == v) throw std::invalid_argument("graph: loop edge");
        auto* ru = rows_.data() + static_cast<std::size_t>(u) * words_;
        if ((ru[v / 64] >> (v % 64)) & 1u) throw std::invalid_argument("graph: duplicate edge");
        ru[v / 64] |= std::uint64_t{1} << (v % 64);
        auto* rv = rows_.data() + static_cast<std::size_t>(v) * words_;
        rv[u / 64] |= std::uint64_t{1} << (u % 64);
        ++degrees_[u];
        ++degrees_[v];
        ++edge_count_;
    }
}

bool Graph::has_edge(int u, int v) const {
    if (u == v) return false;
    return (row(u)[v / 64] >> (v % 64)) & 1u;
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(static_cast<std::size_t>(edge_count_));
    for (int u = 0; u < n_; ++u)
        for (int v = u + 1; v < n_; ++v)
            if (has_edge(u, v)) out.emplace_back(u, v);
    return out;
}

PatternGraph::PatternGraph(int f, const std::vector<std::pair<int, int>>& edges, std::string label)
    : f_(f), label_(std::move(label)) {
    if (f < 1) throw std::invalid_argument("pattern: vertex count must be >= 1");
    if (f > 12) throw std::invalid_argument("pattern: vertex count above the supported bound 12");
    adj_.assign(f, 0);
    deg_.assign(f, 0);
    for (auto [i, j] : edges) {
        if (i < 0 || i >= f || j < 0 || j >= f)
            throw std::invalid_argument("pattern: vertex index out of range");
        if (i == j) throw std::invalid_argument("pattern: loop edge");
        if (has_edge(i, j)) throw std::invalid_argument("pattern: duplicate edge");
        adj_[i] |= 1u << j;
        adj_[j] |= 1u << i;
        ++deg_[i];
        ++deg_[j];
        edges_.emplace_back(std::min(i, j), std::max(i, j));
    }
    std::sort(edges_.begin(), edges_.end());
}

PatternGraph PatternGraph::complement() const {
    std::vector<std::pair<int, int>> comp;
    for (int i = 0; i < f_; ++i)
        for (int j = i + 1; j < f_; ++j)
            if (!has_edge(i, j)) comp.emplace_back(i, j);
    std::string name = label_.empty() ? "" : "co-" + label_;
    return PatternGraph(f_, comp, name);
}

double PatternGraph::edge_density() const {
    if (f_ < 2) return 0.0;
    return static_cast<double>(e()) / (static_cast<double>(f_) * (f_ - 1) / 2.0);
}

PatternGraph pattern_k2() { return PatternGraph(2, {{0, 1}}, "K2"); }
PatternGraph pattern_p3() { return PatternGraph(3, {{0, 1}, {1, 2}}, "P3"); }
PatternGraph pattern_k3() { return PatternGraph(3, {{0, 1}, {0, 2}, {1, 2}}, "K3"); }
PatternGraph pattern_c4() { return PatternGraph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, "C4"); }
PatternGraph pattern_c5() { return PatternGraph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}}, "C5"); }
PatternGraph pattern_k4() {
    return PatternGraph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}, "K4");
}

PatternGraph pattern_star(int k) {
    if (k < 1) throw std::invalid_argument("star: k must be >= 1");
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= k; ++i) edges.emplace_back(0, i);
    return PatternGraph(k + 1, edges, "S" + std::to_string(k));
}

PatternGraph pattern_by_name(const std::string& name) {
    if (name == "K2") return pattern_k2();
    if (name == "P3") return pattern_p3();
    if (name == "K3") return pattern_k3();
    if (name == "C4") return pattern_c4();
    if (name == "C5") return pattern_c5();
    if (name == "K4") return pattern_k4();
    if (name.size() >= 2 && name[0] == 'S') {
        int k = 0;
        for (std::size_t i = 1; i < name.size(); ++i) {
            if (name[i] < '0' || name[i] > '9') throw std::invalid_argument("unknown pattern name: " + name);
            k = k * 10 + (name[i] - '0');
        }
        return pattern_star(k);
    }
    throw std::invalid_argument("unknown pattern name: " + name);
}

VertexConstraint VertexConstraint::single(std::vector<int> u) {
    VertexConstraint c;
    c.mode = Mode::single;
    c.sets.push_back(std::move(u));
    return c;
}

VertexConstraint VertexConstraint::per_vertex(std::vector<std::vector<int>> us) {
    VertexConstraint c;
    c.mode = Mode::per_vertex;
    c.sets = std::move(us);
    return c;
}

namespace {

struct ParsedEdgeList {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
};

ParsedEdgeList parse_edge_list(const std::string& text) {
    ParsedEdgeList out;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    bool have_n = false;
    std::set<std::pair<int, int>> seen;
    auto fail = [&](const std::string& what) {
        throw std::invalid_argument("line " + std::to_string(line_no) + ": " + what);
    };
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        if (!have_n) {
            long long n;
            if (!(ls >> n)) {
                std::string rest;
                if (ls.clear(), ls >> rest) fail("expected vertex count");
                continue; // blank/comment line before the header
            }
            std::string extra;
            if (ls >> extra) fail("unexpected token after vertex count");
            if (n < 0 || n > 1'000'000) fail("vertex count out of range");
            out.n = static_cast<int>(n);
            have_n = true;
            continue;
        }
        long long u, v;
        if (!(ls >> u)) continue; // blank line
        if (!(ls >> v)) fail("malformed edge line");
        std::string extra;
        if (ls >> extra) fail("unexpected token after edge");
        if (u < 0 || u >= out.n || v < 0 || v >= out.n) fail("vertex index out of range");
        if (u == v) fail("loop edge");
        const int lo = static_cast<int>(std::min(u, v));
        const int hi = static_cast<int>(std::max(u, v));
        if (!seen.insert({lo, hi}).second) fail("duplicate edge");
        out.edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    }
    if (!have_n) throw std::invalid_argument("line 1: missing vertex count");
    return out;
}

} // namespace

Graph parse_graph(const std::string& text) {
    auto parsed = parse_edge_list(text);
    return Graph(parsed.n, parsed.edges);
}

PatternGraph parse_pattern(const std::string& text, std::string label) {
    auto parsed = parse_edge_list(text);
    return PatternGraph(parsed.n, parsed.edges, std::move(label));
}

std::string to_edge_list(const Graph& g) {
    std::ostringstream out;
    out << g.n() << "\n";
    for (auto [u, v] : g.edges()) out << u << " " << v << "\n";
    return out.str();
}

Graph complement(const Graph& g) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < g.n(); ++u)
        for (int v = u + 1; v < g.n(); ++v)
            if (!g.has_edge(u, v)) edges.emplace_back(u, v);
    return Graph(g.n(), edges);
}

Graph gen_gnp(int n, double p, std::uint64_t seed) {
    if (n < 0) throw std::invalid_argument("gen_gnp: negative n");
    SplitMix64 rng(seed);
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.next_double() < p) edges.emplace_back(i, j);
    return Graph(n, edges);
}

Graph gen_complete_bipartite(int a, int b) {
    if (a < 0 || b < 0) throw std::invalid_argument("gen_complete_bipartite: negative part size");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) edges.emplace_back(i, a + j);
    return Graph(a + b, edges);
}

namespace {

using Mask = std::vector<std::uint64_t>;

Mask full_mask(int n, int words) {
    Mask m(words, 0);
    for (int v = 0; v < n; ++v) m[v / 64] |= std::uint64_t{1} << (v % 64);
    return m;
}

Mask mask_from_list(const std::vector<int>& vs, int n, int words) {
    Mask m(words, 0);
    for (int v : vs) {
        if (v < 0 || v >= n) throw std::invalid_argument("constraint: vertex index out of range");
        m[v / 64] |= std::uint64_t{1} << (v % 64);
    }
    return m;
}

} // namespace

bigcount count_subgraphs(const PatternGraph& f, const Graph& g,
                         const VertexConstraint& constraint, bool induced) {
    const int nf = f.f();
    const int n = g.n();
    const int words = g.words();
    if (nf > 0 && n > 0) {
        // Guard the 128-bit accumulator: the count is < n^f.
        if (static_cast<double>(nf) * std::log2(static_cast<double>(n)) >= 126.0)
            throw std::invalid_argument("count_subgraphs: host too large for exact 128-bit counts");
    }
    if (constraint.mode == VertexConstraint::Mode::per_vertex &&
        static_cast<int>(constraint.sets.size()) != nf)
        throw std::invalid_argument("constraint: per-vertex mode needs one set per pattern vertex");
    if (n < nf) return 0;

    // Pattern vertices in decreasing-degree order (stable on ties).
    std::vector<int> order(nf);
    for (int i = 0; i < nf; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return f.degree(a) > f.degree(b); });

    // Base candidate mask per level: the constraint set for that vertex.
    const Mask everything = full_mask(n, words);
    std::vector<Mask> base(nf, everything);
    if (constraint.mode == VertexConstraint::Mode::single) {
        Mask u = mask_from_list(constraint.sets.at(0), n, words);
        for (auto& b : base) b = u;
    } else if (constraint.mode == VertexConstraint::Mode::per_vertex) {
        for (int lvl = 0; lvl < nf; ++lvl)
            base[lvl] = mask_from_list(constraint.sets[order[lvl]], n, words);
    }

    // Non-adjacency rows for induced pruning (diagonal cleared; the used-mask
    // already excludes assigned vertices).
    std::vector<std::uint64_t> nonadj;
    if (induced) {
        nonadj.assign(static_cast<std::size_t>(n) * words, 0);
        for (int v = 0; v < n; ++v) {
            auto* dst = nonadj.data() + static_cast<std::size_t>(v) * words;
            const auto* src = g.row(v);
            for (int w = 0; w < words; ++w) dst[w] = ~src[w];
            dst[v / 64] &= ~(std::uint64_t{1} << (v % 64));
            const int tail = n % 64;
            if (tail) dst[words - 1] &= (std::uint64_t{1} << tail) - 1;
        }
    }

    if (nf == 1) {
        bigcount c = 0;
        for (int w = 0; w < words; ++w) c += static_cast<unsigned>(std::popcount(base[0][w]));
        return c;
    }

    // Forward checking: narrowed[lvl][d] is the candidate set of level lvl
    // after the first d assignments. Injectivity is applied through the used
    // mask at selection time.
    std::vector<std::vector<Mask>> narrowed(nf);
    for (int lvl = 0; lvl < nf; ++lvl) {
        narrowed[lvl].assign(lvl + 1, Mask(words, 0));
        narrowed[lvl][0] = base[lvl];
    }
    Mask used(words, 0);
    std::vector<Mask> iter(nf, Mask(words, 0));
    bigcount total = 0;

    const auto constrain_row = [&](int later, int depth, int host) -> const std::uint64_t* {
        if (f.has_edge(order[later], order[depth])) return g.row(host);
        if (induced) return nonadj.data() + static_cast<std::size_t>(host) * words;
        return nullptr;
    };

    auto rec = [&](auto&& self, int depth) -> void {
        Mask& current = iter[depth];
        const Mask& avail = narrowed[depth][depth];
        for (int w = 0; w < words; ++w) current[w] = avail[w] & ~used[w];
        const bool deepest_pair = depth == nf - 2;
        const Mask& last_src = narrowed[nf - 1][depth];
        for (int w = 0; w < words; ++w) {
            std::uint64_t bits = current[w];
            while (bits) {
                const int b = std::countr_zero(bits);
                bits &= bits - 1;
                const int v = w * 64 + b;
                used[w] |= std::uint64_t{1} << b;
                if (deepest_pair) {
                    // The final level only needs a popcount.
                    if (const auto* row = constrain_row(nf - 1, depth, v)) {
                        for (int x = 0; x < words; ++x)
                            total += static_cast<unsigned>(
                                std::popcount(last_src[x] & row[x] & ~used[x]));
                    } else {
                        for (int x = 0; x < words; ++x)
                            total +=
                                static_cast<unsigned>(std::popcount(last_src[x] & ~used[x]));
                    }
                } else {
                    for (int later = depth + 1; later < nf; ++later) {
                        Mask& dst = narrowed[later][depth + 1];
                        const Mask& src = narrowed[later][depth];
                        if (const auto* row = constrain_row(later, depth, v))
                            for (int x = 0; x < words; ++x) dst[x] = src[x] & row[x];
                        else
                            dst = src;
                    }
                    self(self, depth + 1);
                }
                used[w] &= ~(std::uint64_t{1} << b);
            }
        }
    };
    rec(rec, 0);
    return total;
}

double t_inj(const PatternGraph& f, const Graph& g, bool induced) {
    if (g.n() < f.f()) throw std::invalid_argument("t_inj: host graph smaller than the pattern");
    bigcount count = count_subgraphs(f, g, VertexConstraint::unconstrained(), induced);
    double falling = 1.0;
    for (int i = 0; i < f.f(); ++i) falling *= static_cast<double>(g.n() - i);
    return to_double(count) / falling;
}

std::int64_t cut_edges(const Graph& g, const std::vector<int>& u) {
    const int words = g.words();
    Mask in_u = mask_from_list(u, g.n(), words);
    std::int64_t total = 0;
    for (int v : u) {
        const auto* r = g.row(v);
        for (int w = 0; w < words; ++w) total += std::popcount(r[w] & ~in_u[w]);
    }
    return total;
}

double degree_moment(const Graph& g, int k) {
    if (g.n() == 0) throw std::invalid_argument("degree_moment: empty graph");
    if (k < 1) throw std::invalid_argument("degree_moment: k must be >= 1");
    const double n = g.n();
    double sum = 0.0;
    for (int v = 0; v < g.n(); ++v) sum += std::pow(g.degree(v) / n, k);
    return sum / n;
}

double regularity_deviation(const Graph& g, double p) {
    if (g.n() == 0) throw std::invalid_argument("regularity_deviation: empty graph");
    const double n = g.n();
    double sum = 0.0;
    for (int v = 0; v < g.n(); ++v) sum += std::abs(g.degree(v) - p * n);
    return sum / (n * n);
}

} // namespace graphlim
