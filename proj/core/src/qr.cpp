#include "graphlim/qr.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "graphlim/hf.hpp"
#include "graphlim/rng.hpp"

namespace graphlim {

namespace {

double ipow(double x, int e) {
    double r = 1.0;
    while (e > 0) {
        if (e & 1) r *= x;
        x *= x;
        e >>= 1;
    }
    return r;
}

std::vector<int> sorted_list(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
}

// Vertices ordered by decreasing degree (ties by index): prefixes of this
// order are the deterministic cut candidates probed alongside random samples.
// Extremal witnesses tend to be degree level sets (the gamma=1/2 cut
// counterexample is one), which uniform subset sampling essentially never
// hits.
std::vector<int> degree_order(const Graph& g) {
    std::vector<int> order(g.n());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return g.degree(a) > g.degree(b); });
    return order;
}

std::vector<int> random_subset(SplitMix64& rng, int n) {
    std::vector<int> out;
    for (int v = 0; v < n; ++v)
        if (rng.next_u64() & 1) out.push_back(v);
    return out;
}

std::vector<int> random_subset_of_size(SplitMix64& rng, int n, int m) {
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    for (int i = 0; i < m; ++i) {
        const auto j = i + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n - i)));
        std::swap(pool[i], pool[j]);
    }
    return sorted_list(std::vector<int>(pool.begin(), pool.begin() + m));
}

} // namespace

DeviationReport dev_global(const Graph& g, double p, const std::vector<PatternGraph>& patterns) {
    if (patterns.empty()) throw std::invalid_argument("dev_global: no patterns given");
    DeviationReport rep;
    rep.property = "global";
    rep.p = p;
    rep.exhaustive = true;
    for (const auto& f : patterns) {
        if (g.n() < f.f()) throw std::invalid_argument("dev_global: host graph too small");
        const double count = to_double(count_subgraphs(f, g, VertexConstraint::unconstrained(), false));
        const double dev = std::abs(count / ipow(g.n(), f.f()) - ipow(p, f.e()));
        if (rep.samples == 0 || dev > rep.max_dev) {
            rep.max_dev = dev;
            rep.pattern = f.label();
        }
        ++rep.samples;
    }
    return rep;
}

namespace {

struct HereditaryEval {
    const Graph& g;
    const PatternGraph& f;
    bool induced;
    double coef;  // p^e(F) or beta_F(p)
    double scale; // n^f

    double dev_single(const std::vector<int>& u, bigcount* count_out = nullptr) const {
        const auto count = count_subgraphs(f, g, VertexConstraint::single(u), induced);
        if (count_out) *count_out = count;
        const double target = coef * ipow(static_cast<double>(u.size()), f.f());
        return std::abs(to_double(count) - target) / scale;
    }

    double dev_multi(const std::vector<std::vector<int>>& us) const {
        const auto count = count_subgraphs(f, g, VertexConstraint::per_vertex(us), induced);
        double target = coef;
        for (const auto& u : us) target *= static_cast<double>(u.size());
        return std::abs(to_double(count) - target) / scale;
    }
};

void track_single(DeviationReport& rep, const HereditaryEval& eval, const std::vector<int>& u) {
    const double dev = eval.dev_single(u);
    ++rep.samples;
    if (dev > rep.max_dev) {
        rep.max_dev = dev;
        rep.witness = {u};
    }
}

void track_multi(DeviationReport& rep, const HereditaryEval& eval,
                 const std::vector<std::vector<int>>& us) {
    const double dev = eval.dev_multi(us);
    ++rep.samples;
    if (dev > rep.max_dev) {
        rep.max_dev = dev;
        rep.witness = us;
    }
}

std::vector<int> mask_to_list(std::uint64_t mask, int n) {
    std::vector<int> out;
    for (int v = 0; v < n; ++v)
        if ((mask >> v) & 1u) out.push_back(v);
    return out;
}

} // namespace

DeviationReport dev_hereditary(const Graph& g, const PatternGraph& f, double p,
                               HereditaryMode mode, const SizeSpec& size, bool induced,
                               const SampleParams& sampler) {
    const int n = g.n();
    const int nf = f.f();
    if (n < nf) throw std::invalid_argument("dev_hereditary: host graph too small");

    int m = 0;
    if (size.fixed) {
        if (!(size.gamma > 0.0 && size.gamma < 1.0))
            throw std::invalid_argument("dev_hereditary: gamma must be in (0,1)");
        if (mode == HereditaryMode::disjoint) {
            const double boundary = 1.0 / nf;
            if (size.gamma > boundary + 1e-12 ||
                (std::abs(size.gamma - boundary) <= 1e-12 && !size.allow_boundary_gamma))
                throw std::invalid_argument(
                    "dev_hereditary: disjoint fixed-size mode needs gamma < 1/f");
        }
        m = static_cast<int>(std::floor(size.gamma * n));
    }

    DeviationReport rep;
    rep.property = mode == HereditaryMode::single     ? "hereditary-single"
                   : mode == HereditaryMode::multi    ? "hereditary-multi"
                                                      : "hereditary-disjoint";
    rep.pattern = f.label();
    rep.p = p;
    rep.has_gamma = size.fixed;
    rep.gamma = size.gamma;
    rep.induced = induced;
    rep.seed = sampler.seed;
    if (mode == HereditaryMode::disjoint && size.fixed && size.allow_boundary_gamma &&
        std::abs(size.gamma - 1.0 / nf) <= 1e-12)
        rep.annotation = "gamma=1/f boundary: no verdict (open problem)";

    HereditaryEval eval{g, f, induced, induced ? beta(f, p) : ipow(p, f.e()),
                        ipow(static_cast<double>(n), nf)};

    const double log2_single_space = static_cast<double>(n);
    SplitMix64 rng(sampler.seed);

    if (mode == HereditaryMode::single) {
        if (!size.fixed && log2_single_space <= 20.0) {
            rep.exhaustive = true;
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask)
                track_single(rep, eval, mask_to_list(mask, n));
            return rep;
        }
        if (size.fixed) {
            // C(n,m) <= 2^20 enables exhaustive enumeration of m-subsets.
            double log2_comb = 0.0;
            for (int i = 0; i < m; ++i)
                log2_comb += std::log2(static_cast<double>(n - i)) -
                             std::log2(static_cast<double>(i + 1));
            if (log2_comb <= 20.0) {
                rep.exhaustive = true;
                std::vector<int> comb(m);
                std::iota(comb.begin(), comb.end(), 0);
                while (true) {
                    track_single(rep, eval, comb);
                    int i = m - 1;
                    while (i >= 0 && comb[i] == n - m + i) --i;
                    if (i < 0) break;
                    ++comb[i];
                    for (int j = i + 1; j < m; ++j) comb[j] = comb[j - 1] + 1;
                }
                return rep;
            }
        }
        // Sampled: uniform subsets plus degree-ordered prefix probes.
        const auto order = degree_order(g);
        if (size.fixed) {
            track_single(rep, eval, sorted_list({order.begin(), order.begin() + m}));
            track_single(rep, eval, sorted_list({order.end() - m, order.end()}));
            for (long long i = 0; i < sampler.samples; ++i)
                track_single(rep, eval, random_subset_of_size(rng, n, m));
        } else {
            for (int len = 0; len <= n; ++len) {
                track_single(rep, eval, sorted_list({order.begin(), order.begin() + len}));
                track_single(rep, eval, sorted_list({order.end() - len, order.end()}));
            }
            for (long long i = 0; i < sampler.samples; ++i)
                track_single(rep, eval, random_subset(rng, n));
        }
        return rep;
    }

    if (mode == HereditaryMode::multi) {
        if (static_cast<double>(n) * nf <= 20.0) {
            rep.exhaustive = true;
            std::vector<std::uint64_t> masks(nf, 0);
            while (true) {
                bool sizes_ok = true;
                if (size.fixed)
                    for (const auto mask : masks)
                        sizes_ok = sizes_ok && std::popcount(mask) == m;
                if (sizes_ok) {
                    std::vector<std::vector<int>> us;
                    for (const auto mask : masks) us.push_back(mask_to_list(mask, n));
                    track_multi(rep, eval, us);
                }
                int pos = nf - 1;
                while (pos >= 0 && ++masks[pos] == (std::uint64_t{1} << n)) masks[pos--] = 0;
                if (pos < 0) break;
            }
            return rep;
        }
        for (long long i = 0; i < sampler.samples; ++i) {
            std::vector<std::vector<int>> us;
            for (int j = 0; j < nf; ++j)
                us.push_back(size.fixed ? random_subset_of_size(rng, n, m) : random_subset(rng, n));
            track_multi(rep, eval, us);
        }
        return rep;
    }

    // Disjoint mode.
    if (static_cast<double>(n) * std::log2(static_cast<double>(nf) + 1.0) <= 20.0) {
        rep.exhaustive = true;
        std::vector<int> bin(n, 0); // 0 = unused, 1..f = set index
        while (true) {
            std::vector<std::vector<int>> us(nf);
            for (int v = 0; v < n; ++v)
                if (bin[v] > 0) us[bin[v] - 1].push_back(v);
            bool sizes_ok = true;
            if (size.fixed)
                for (const auto& u : us) sizes_ok = sizes_ok && static_cast<int>(u.size()) == m;
            if (sizes_ok) track_multi(rep, eval, us);
            int pos = n - 1;
            while (pos >= 0 && ++bin[pos] == nf + 1) bin[pos--] = 0;
            if (pos < 0) break;
        }
        return rep;
    }
    for (long long i = 0; i < sampler.samples; ++i) {
        std::vector<std::vector<int>> us(nf);
        if (size.fixed) {
            std::vector<int> pool(n);
            std::iota(pool.begin(), pool.end(), 0);
            for (int x = n - 1; x > 0; --x)
                std::swap(pool[x], pool[rng.next_below(static_cast<std::uint64_t>(x) + 1)]);
            for (int j = 0; j < nf; ++j)
                us[j] = sorted_list({pool.begin() + j * m, pool.begin() + (j + 1) * m});
        } else {
            for (int v = 0; v < n; ++v) {
                const auto bin = rng.next_below(static_cast<std::uint64_t>(nf) + 1);
                if (bin > 0) us[bin - 1].push_back(v);
            }
        }
        track_multi(rep, eval, us);
    }
    return rep;
}

DeviationReport dev_cut(const Graph& g, double p, const SizeSpec& size,
                        const SampleParams& sampler) {
    const int n = g.n();
    if (n < 1) throw std::invalid_argument("dev_cut: empty graph");
    int m = 0;
    if (size.fixed) {
        if (!(size.gamma > 0.0 && size.gamma < 1.0))
            throw std::invalid_argument("dev_cut: gamma must be in (0,1)");
        m = static_cast<int>(std::floor(size.gamma * n));
    }

    DeviationReport rep;
    rep.property = size.fixed ? "cut-fixed-size" : "cut";
    rep.p = p;
    rep.has_gamma = size.fixed;
    rep.gamma = size.gamma;
    rep.seed = sampler.seed;
    if (size.fixed && std::abs(size.gamma - 0.5) <= 1e-12)
        rep.annotation = "gamma=1/2: not forcing without regularity";

    const double scale = static_cast<double>(n) * n;
    auto track = [&](const std::vector<int>& u) {
        const double cross = static_cast<double>(cut_edges(g, u));
        const double target = p * static_cast<double>(u.size()) * (n - u.size());
        const double dev = std::abs(cross - target) / scale;
        ++rep.samples;
        if (dev > rep.max_dev) {
            rep.max_dev = dev;
            rep.witness = {u};
        }
    };

    if (!size.fixed && n <= 20) {
        rep.exhaustive = true;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask)
            track(mask_to_list(mask, n));
        return rep;
    }
    if (size.fixed) {
        double log2_comb = 0.0;
        for (int i = 0; i < m; ++i)
            log2_comb +=
                std::log2(static_cast<double>(n - i)) - std::log2(static_cast<double>(i + 1));
        if (log2_comb <= 20.0) {
            rep.exhaustive = true;
            std::vector<int> comb(m);
            std::iota(comb.begin(), comb.end(), 0);
            while (true) {
                track(comb);
                int i = m - 1;
                while (i >= 0 && comb[i] == n - m + i) --i;
                if (i < 0) break;
                ++comb[i];
                for (int j = i + 1; j < m; ++j) comb[j] = comb[j - 1] + 1;
            }
            return rep;
        }
    }

    SplitMix64 rng(sampler.seed);
    const auto order = degree_order(g);
    if (size.fixed) {
        track(sorted_list({order.begin(), order.begin() + m}));
        track(sorted_list({order.end() - m, order.end()}));
        for (long long i = 0; i < sampler.samples; ++i)
            track(random_subset_of_size(rng, n, m));
    } else {
        for (int len = 0; len <= n; ++len)
            track(sorted_list({order.begin(), order.begin() + len}));
        for (long long i = 0; i < sampler.samples; ++i) track(random_subset(rng, n));
    }
    return rep;
}

DeviationReport dev_regularity(const Graph& g, double p) {
    DeviationReport rep;
    rep.property = "regularity";
    rep.p = p;
    rep.samples = 1;
    rep.exhaustive = true;
    rep.max_dev = regularity_deviation(g, p);
    return rep;
}

DegreeMomentReport degree_moment_check(const Graph& g, int kmax) {
    if (g.n() == 0) throw std::invalid_argument("degree_moment_check: empty graph");
    if (kmax < 1) throw std::invalid_argument("degree_moment_check: kmax must be >= 1");
    int max_degree = 0;
    for (int v = 0; v < g.n(); ++v) max_degree = std::max(max_degree, g.degree(v));
    if (max_degree > 1 &&
        kmax * std::log2(static_cast<double>(max_degree)) + std::log2(static_cast<double>(g.n())) >=
            126.0)
        throw std::invalid_argument("degree_moment_check: kmax too large for exact star counts");
    DegreeMomentReport rep;
    const double n = g.n();
    for (int k = 1; k <= kmax; ++k) {
        const double lhs = degree_moment(g, k);
        bigcount star_homs = 0; // hom(S_k, G) = sum_v d_v^k
        for (int v = 0; v < g.n(); ++v) {
            bigcount term = 1;
            for (int i = 0; i < k; ++i) term *= static_cast<unsigned>(g.degree(v));
            star_homs += term;
        }
        const double rhs = to_double(star_homs) / std::pow(n, k + 1);
        rep.differences.push_back(std::abs(lhs - rhs));
        rep.max_dev = std::max(rep.max_dev, rep.differences.back());
    }
    return rep;
}

DeviationReport dev_degree_moment(const Graph& g, int kmax) {
    DeviationReport rep;
    rep.property = "degree-moment";
    rep.samples = kmax;
    rep.exhaustive = true;
    rep.max_dev = degree_moment_check(g, kmax).max_dev;
    return rep;
}

ConvergenceReport convergence_report(const std::vector<Graph>& graphs, const StepKernel& target,
                                     const std::vector<PatternGraph>& patterns) {
    ConvergenceReport rep;
    std::vector<std::size_t> order(graphs.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return graphs[a].n() < graphs[b].n(); });
    for (const auto idx : order) {
        for (const auto& f : patterns) {
            if (graphs[idx].n() < f.f())
                throw std::invalid_argument("convergence_report: host graph too small");
            // N(F,G)/n^f, the same normalization as dev_global, so the
            // finite-size correction of the step-graphon embedding shows up
            // in the table.
            const double count = to_double(
                count_subgraphs(f, graphs[idx], VertexConstraint::unconstrained(), false));
            const double dev = std::abs(count / ipow(graphs[idx].n(), f.f()) -
                                        t_density(f, target, false));
            rep.rows.push_back({graphs[idx].n(), f.label(), dev});
        }
    }
    return rep;
}

} // namespace graphlim
