#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "graphlim/graph.hpp"
#include "graphlim/kernel.hpp"

namespace graphlim {

// Result of a cut-norm (or cut-distance) computation. witness_s/witness_t are
// fractional part indicators in [0,1]^k; re-evaluating the bilinear form at
// them reproduces |value|.
struct CutResult {
    double value = 0.0;
    std::vector<double> witness_s;
    std::vector<double> witness_t;
    bool exact = false;
    std::string note;
};

struct CutNormOptions {
    int exact_threshold = 20; // enumerate 2^k sign choices up to this many parts
    int restarts = 20;        // alternating-maximization restarts beyond it
    std::uint64_t seed = 0;
};

// |sum_ij s_i t_j weight(i) weight(j) value(i,j)| at fractional indicators.
double cut_bilinear(const StepKernel& w, const std::vector<double>& s,
                    const std::vector<double>& t);

// Cut norm sup_{S,T} |integral over S x T|. The map is bilinear in the part
// indicators, so the optimum sits at 0/1 vertices: up to exact_threshold
// parts every S in {0,1}^k is enumerated (Gray-code marginal updates) with T
// chosen greedily per sign; beyond it, seeded alternating maximization with
// restarts reports a lower bound flagged exact=false.
CutResult cut_norm(const StepKernel& w, const CutNormOptions& opts = {});

// Entrywise difference of two kernels on identical part weights (signed).
StepKernel kernel_difference(const StepKernel& w1, const StepKernel& w2);

// Each part split into r equal sub-parts with copied values; densities are
// invariant under this refinement.
StepKernel blowup(const StepKernel& w, int r);

// Upper bound on the cut distance between two graphs of the same order:
// min over vertex relabellings of H of cut_norm(W_G - W_{H,relabelled}).
// Exhaustive over all n! relabellings for n <= 8 (exact within the
// permutation class); seeded local search over transpositions otherwise.
// Fractional overlays can be smaller, so the result is only an upper bound
// on delta_box; the note says so.
CutResult cut_distance_graphs(const Graph& g, const Graph& h, int budget = 10,
                              std::uint64_t seed = 0);

} // namespace graphlim
