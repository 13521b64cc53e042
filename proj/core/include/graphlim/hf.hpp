#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "graphlim/graph.hpp"

namespace graphlim {

// Multiaffine polynomial over the pair variables w_ij, 1 <= i < j <= m: a
// linear combination of monomials prod_{(i,j) in P} w_ij. Pairs are indexed
// lexicographically; a monomial stores the set of its pairs as a bitmask.
struct MultiaffinePolynomial {
    int m = 0;
    struct Monomial {
        double coefficient = 0.0;
        std::uint32_t pairs = 0;
    };
    std::vector<Monomial> monomials;

    static int pair_index(int i, int j, int m); // 0-based vertices, i < j

    // Evaluation at an arbitrary assignment of the C(m,2) pair variables.
    double eval(const std::vector<double>& w) const;
};

// beta_F(p) = p^e(F) (1-p)^(C(f,2)-e(F)): the induced-copy density of F in
// G(n,p).
double beta(const PatternGraph& f, double p);

// The conjugate density: the unique value on the other side of the edge
// density p_F with beta_F(p_bar) = beta_F(p), located by bisection to tol.
// Returns p itself when p = p_F or F is empty or complete.
double p_bar(const PatternGraph& f, double p, double tol);

// Q_k(u,v,s) = sum over k-subsets A of V(F) of
//   u^e(A) (1-u)^(C(k,2)-e(A)) * v^e(A̅) (1-v)^(C(f-k,2)-e(A̅))
//   * s^e(A,A̅) (1-s)^(k(f-k)-e(A,A̅)).
double qk_eval(const PatternGraph& f, int k, double u, double v, double s);

// Coefficients (ascending powers of s) of s -> Q_k(u,v,s), via exact binomial
// expansion of the s^a (1-s)^b factors; requires 1 <= k <= f-1.
std::vector<double> qk_s_polynomial(const PatternGraph& f, int k, double u, double v);

struct HFWitness {
    double u = 0.0;
    double v = 0.0;
    double s = 0.0;
    double max_residual = 0.0; // max_k |Q_k(u,v,s) - C(f,k) beta_F(p)|
};

// Numeric probe of the hereditary induced-forcing criterion. A counterexample
// is a not-all-equal (u,v,s) with u,v in {p, p_bar} solving the whole Q_k
// system at the tolerance; certified-at-tolerance only reports that none was
// found at this tolerance and scan resolution, not a proof.
struct HFVerdict {
    enum class Status { certified_at_tolerance, counterexample };
    Status status = Status::certified_at_tolerance;
    double p = 0.0;
    double p_conjugate = 0.0;
    double tolerance = 0.0;
    std::vector<HFWitness> witnesses;
};

// For each (u,v) in {p, p_bar}^2, isolates the real roots s in [0,1] of
// Q_1(u,v,s) = C(f,1) beta_F(p) (sign-change bisection on the exact
// coefficient polynomial, plus extremum probing for tangent roots), filters
// them through the residuals of Q_2..Q_{f-1}, and drops the all-equal
// solution. grid is the number of scan points used for root isolation.
HFVerdict hf_check(const PatternGraph& f, double p, double tol, int grid = 101);

// Exact multiaffine expansion of Psi_F (one monomial) or Psi*_F (the
// (1-w) factors expanded with signs); symmetrized averages the monomials over
// all f! relabellings (f <= 8).
MultiaffinePolynomial build_psi_polynomial(const PatternGraph& f, bool induced,
                                           bool symmetrized);

// Phi evaluated on the 2-type assignment: w_ij = u when i,j in a, v when both
// outside, s when split. a is a bitmask over the m vertices.
double two_type_eval(const MultiaffinePolynomial& phi, double u, double v, double s,
                     std::uint32_t a);

struct TwoTypeSearchOptions {
    double tol = 1e-9;
    int grid = 101;
    std::uint64_t seed = 0;
};

// Searches [0,1]^3 for a not-all-equal (u,v,s) with
// max_{A subseteq [m]} |two_type_eval(phi,u,v,s,A) - alpha| <= tol:
// grid scan followed by shrinking-step coordinate descent on the residual.
std::optional<HFWitness> find_two_type_solution(const MultiaffinePolynomial& phi, double alpha,
                                                const TwoTypeSearchOptions& opts = {});

} // namespace graphlim
