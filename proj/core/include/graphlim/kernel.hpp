#pragma once

#include <cstdint>
#include <vector>

#include "graphlim/graph.hpp"

namespace graphlim {

enum class KernelRange { graphon, signed_kernel };

// Step graphon / step kernel: a symmetric k x k value matrix over parts with
// positive weights summing to 1. Values live in [0,1] (graphon) or [-1,1]
// (signed). The diagonal entry values(i,i) is the within-part value; W_G sets
// it to 0. Every integral over a step kernel reduces to a finite sum over
// part tuples, which is what the density and box routines below compute.
class StepKernel {
public:
    StepKernel(std::vector<double> weights, std::vector<std::vector<double>> values,
               KernelRange range);

    int parts() const { return k_; }
    double weight(int i) const { return weights_[i]; }
    const std::vector<double>& weights() const { return weights_; }
    double value(int i, int j) const { return values_[i][j]; }
    const std::vector<std::vector<double>>& values() const { return values_; }
    KernelRange range() const { return range_; }

    // Marginal of part i: sum_j weight(j) * value(i,j).
    double marginal(int i) const;

private:
    int k_ = 0;
    std::vector<double> weights_;
    std::vector<std::vector<double>> values_;
    KernelRange range_ = KernelRange::graphon;
};

StepKernel constant_kernel(double p);

// W_G: one part of weight 1/|G| per vertex, value 1 on edges, 0 elsewhere
// (including the diagonal).
StepKernel step_from_graph(const Graph& g);

// Two parts of weight (w1, 1-w1), values [[u,s],[s,v]].
StepKernel two_type(double u, double v, double s, double w1 = 0.5);

// Fractional boxes A_1..A_f: fractions[i][j] is the share of part j that
// belongs to A_i.
struct BoxSpec {
    std::vector<std::vector<double>> fractions;

    double measure(int i, const StepKernel& w) const;
};

// Psi_{F,W} at representative points of the given parts: the product of
// W(x_i,x_j) over pattern edges, times (1 - W(x_i,x_j)) over non-edges when
// induced. symmetrized averages over all f! relabellings (f <= 8).
double psi_eval(const PatternGraph& f, const StepKernel& w, const std::vector<int>& parts,
                bool induced, bool symmetrized);

// t(F,W) (or t_ind): exact sum over part tuples of the weight product times
// Psi. Repeated parts contribute with full weight; coincidence sets are null
// in the continuum.
double t_density(const PatternGraph& f, const StepKernel& w, bool induced);

// Integral of Psi over A_1 x ... x A_f.
double box_integral(const PatternGraph& f, const StepKernel& w, const BoxSpec& boxes,
                    bool induced);

// max over all k^f part tuples of |Psi - alpha|; zero iff Psi is constant
// alpha across tuples.
double psi_constant_dev(const PatternGraph& f, const StepKernel& w, double alpha,
                        bool induced, bool symmetrized);

// W-random graph: part labels drawn from the weights, then each pair (i,j),
// i<j, in row-major order becomes an edge with probability value(part_i,
// part_j). One SplitMix64 stream: n label draws first, then the pair draws.
Graph sample_graph(const StepKernel& w, int n, std::uint64_t seed);

// E[D_W^k] = sum_i weight(i) * marginal(i)^k = t(S_k, W).
double w_degree_moment(const StepKernel& w, int k);

// True iff every part marginal is within tol of p.
bool is_p_regular(const StepKernel& w, double p, double tol);

} // namespace graphlim
