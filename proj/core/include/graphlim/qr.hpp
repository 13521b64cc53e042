#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "graphlim/graph.hpp"
#include "graphlim/kernel.hpp"

namespace graphlim {

// Outcome of a finite-scale quasi-randomness test. max_dev is the largest
// deviation over every subset examined (the properties under test quantify
// over all subsets, so the max is reported, never an average); witness holds
// the subset(s) achieving it. exhaustive says whether the whole subset space
// was enumerated or only a seeded sample.
struct DeviationReport {
    std::string property; // global | hereditary-single | hereditary-multi |
                          // hereditary-disjoint | cut | cut-fixed-size |
                          // regularity | degree-moment
    std::string pattern;  // pattern label, empty when not applicable
    double p = 0.0;
    bool has_gamma = false;
    double gamma = 0.0;
    bool induced = false;
    long long samples = 0; // candidates examined
    bool exhaustive = false;
    double max_dev = 0.0;
    std::vector<std::vector<int>> witness; // sorted vertex lists
    std::uint64_t seed = 0;
    std::string annotation;
};

enum class HereditaryMode { single, multi, disjoint };

struct SizeSpec {
    bool fixed = false;
    double gamma = 0.0;
    // Permits the gamma == 1/f boundary in disjoint+fixed mode, which the
    // theory leaves open; the report renders no verdict there.
    bool allow_boundary_gamma = false;

    static SizeSpec all() { return {}; }
    static SizeSpec fixed_fraction(double gamma) { return {true, gamma, false}; }
};

struct SampleParams {
    long long samples = 2000;
    std::uint64_t seed = 0;
};

// max over patterns F of |N(F,G)/n^f - p^e(F)|.
DeviationReport dev_global(const Graph& g, double p, const std::vector<PatternGraph>& patterns);

// Hereditary subgraph-count deviations: single common set U, one set per
// pattern vertex, or disjoint per-vertex sets; each optionally restricted to
// |U_i| = floor(gamma n). Targets: p^e(F) prod|U_i| plain, beta_F(p) prod|U_i|
// induced. Deviations are normalized by n^f. The subset space is enumerated
// when it has at most 2^20 elements, otherwise a seeded sample (plus
// deterministic degree-ordered prefix probes in single-set mode) is examined.
DeviationReport dev_hereditary(const Graph& g, const PatternGraph& f, double p,
                               HereditaryMode mode, const SizeSpec& size, bool induced,
                               const SampleParams& sampler);

// max over U of |e(U, U-complement) - p|U||U-complement|| / n^2.
DeviationReport dev_cut(const Graph& g, double p, const SizeSpec& size,
                        const SampleParams& sampler);

// Wraps regularity_deviation into the report shape.
DeviationReport dev_regularity(const Graph& g, double p);

// Per-k gap between the degree-moment E(D/n)^k and the star density
// hom(S_k,G)/n^(k+1); the two are the same sum, so every entry should sit at
// rounding error.
struct DegreeMomentReport {
    std::vector<double> differences; // index k-1
    double max_dev = 0.0;
};

DegreeMomentReport degree_moment_check(const Graph& g, int kmax);
DeviationReport dev_degree_moment(const Graph& g, int kmax);

struct ConvergenceRow {
    int n = 0;
    std::string pattern;
    double deviation = 0.0;
};

struct ConvergenceReport {
    std::vector<ConvergenceRow> rows; // ordered by graph size
};

// |t_inj(F,G_i) - t(F,target)| per graph per pattern.
ConvergenceReport convergence_report(const std::vector<Graph>& graphs, const StepKernel& target,
                                     const std::vector<PatternGraph>& patterns);

} // namespace graphlim
