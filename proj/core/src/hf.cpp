#include "graphlim/hf.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

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

double binom(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return std::round(r);
}

int choose2(int n) { return n * (n - 1) / 2; }

} // namespace

int MultiaffinePolynomial::pair_index(int i, int j, int m) {
    if (i > j) std::swap(i, j);
    return i * m - i * (i + 1) / 2 + (j - i - 1);
}

double MultiaffinePolynomial::eval(const std::vector<double>& w) const {
    if (static_cast<int>(w.size()) != choose2(m))
        throw std::invalid_argument("multiaffine eval: expected one value per pair variable");
    double total = 0.0;
    for (const auto& mono : monomials) {
        double term = mono.coefficient;
        std::uint32_t bits = mono.pairs;
        while (bits) {
            term *= w[std::countr_zero(bits)];
            bits &= bits - 1;
        }
        total += term;
    }
    return total;
}

double beta(const PatternGraph& f, double p) {
    return ipow(p, f.e()) * ipow(1.0 - p, choose2(f.f()) - f.e());
}

double p_bar(const PatternGraph& f, double p, double tol) {
    if (f.f() < 2) throw std::invalid_argument("p_bar: pattern needs at least 2 vertices");
    const int pairs = choose2(f.f());
    if (f.e() == 0 || f.e() == pairs) return p;
    const double pf = static_cast<double>(f.e()) / pairs;
    if (p == pf) return p;
    const double target = beta(f, p);
    double lo, hi;
    if (p < pf) {
        lo = pf;
        hi = 1.0;
    } else {
        lo = 0.0;
        hi = pf;
    }
    // beta is monotone on each side of p_F, so plain bisection applies. The
    // value nearer p_F is the larger one on either side.
    const double precision = tol > 0.0 ? std::min(tol, 1e-12) : 1e-12;
    for (int iter = 0; iter < 200 && hi - lo > precision; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const bool mid_above = beta(f, mid) > target;
        const bool nearer_pf_is_lo = p < pf; // decreasing branch
        if (mid_above == nearer_pf_is_lo)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

namespace {

struct SplitExponents {
    int ea = 0;     // edges inside A
    int eabar = 0;  // edges inside the complement
    int ecross = 0; // edges across
};

SplitExponents split_edges(const PatternGraph& f, std::uint32_t a) {
    SplitExponents out;
    for (auto [i, j] : f.edges()) {
        const bool ia = (a >> i) & 1u, ja = (a >> j) & 1u;
        if (ia && ja)
            ++out.ea;
        else if (!ia && !ja)
            ++out.eabar;
        else
            ++out.ecross;
    }
    return out;
}

} // namespace

double qk_eval(const PatternGraph& f, int k, double u, double v, double s) {
    const int nf = f.f();
    if (k < 0 || k > nf) throw std::invalid_argument("qk_eval: k out of range");
    double total = 0.0;
    for (std::uint32_t a = 0; a < (1u << nf); ++a) {
        if (std::popcount(a) != k) continue;
        const auto e = split_edges(f, a);
        total += ipow(u, e.ea) * ipow(1.0 - u, choose2(k) - e.ea) *
                 ipow(v, e.eabar) * ipow(1.0 - v, choose2(nf - k) - e.eabar) *
                 ipow(s, e.ecross) * ipow(1.0 - s, k * (nf - k) - e.ecross);
    }
    return total;
}

std::vector<double> qk_s_polynomial(const PatternGraph& f, int k, double u, double v) {
    const int nf = f.f();
    if (k < 1 || k > nf - 1) throw std::invalid_argument("qk_s_polynomial: k must be interior");
    const int degree = k * (nf - k);
    std::vector<double> coef(degree + 1, 0.0);
    for (std::uint32_t a = 0; a < (1u << nf); ++a) {
        if (std::popcount(a) != k) continue;
        const auto e = split_edges(f, a);
        const double base = ipow(u, e.ea) * ipow(1.0 - u, choose2(k) - e.ea) *
                            ipow(v, e.eabar) * ipow(1.0 - v, choose2(nf - k) - e.eabar);
        // s^ecross (1-s)^(cross budget - ecross) expanded binomially.
        const int b = k * (nf - k) - e.ecross;
        for (int t = 0; t <= b; ++t)
            coef[e.ecross + t] += base * binom(b, t) * (t % 2 ? -1.0 : 1.0);
    }
    return coef;
}

namespace {

double poly_eval(const std::vector<double>& coef, double x) {
    double r = 0.0;
    for (std::size_t i = coef.size(); i-- > 0;) r = r * x + coef[i];
    return r;
}

std::vector<double> poly_derivative(const std::vector<double>& coef) {
    std::vector<double> d;
    for (std::size_t i = 1; i < coef.size(); ++i) d.push_back(coef[i] * static_cast<double>(i));
    if (d.empty()) d.push_back(0.0);
    return d;
}

double bisect_root(const std::vector<double>& coef, double lo, double hi) {
    double flo = poly_eval(coef, lo);
    for (int iter = 0; iter < 120 && hi - lo > 1e-16; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = poly_eval(coef, mid);
        if (fmid == 0.0) return mid;
        if ((flo < 0.0) != (fmid < 0.0)) {
            hi = mid;
        } else {
            lo = mid;
            flo = fmid;
        }
    }
    return 0.5 * (lo + hi);
}

// Real roots of the coefficient polynomial in [0,1]: sign-change bisection on
// a uniform scan, plus probes at the extrema so tangent (even-multiplicity)
// roots with |value| <= slack are not missed.
std::vector<double> roots_in_unit(const std::vector<double>& coef, int scan_points,
                                  double slack) {
    const int n = std::max(scan_points, 17);
    std::vector<double> roots;
    double prev_x = 0.0, prev_f = poly_eval(coef, 0.0);
    if (prev_f == 0.0) roots.push_back(0.0);
    for (int i = 1; i < n; ++i) {
        const double x = static_cast<double>(i) / (n - 1);
        const double fx = poly_eval(coef, x);
        if (fx == 0.0)
            roots.push_back(x);
        else if ((prev_f < 0.0) != (fx < 0.0) && prev_f != 0.0)
            roots.push_back(bisect_root(coef, prev_x, x));
        prev_x = x;
        prev_f = fx;
    }
    // Extrema of the polynomial where it nearly touches zero.
    const auto deriv = poly_derivative(coef);
    double dprev_x = 0.0, dprev = poly_eval(deriv, 0.0);
    for (int i = 1; i < n; ++i) {
        const double x = static_cast<double>(i) / (n - 1);
        const double dx = poly_eval(deriv, x);
        if ((dprev < 0.0) != (dx < 0.0) && dprev != 0.0 && dx != 0.0) {
            const double ext = bisect_root(deriv, dprev_x, x);
            if (std::abs(poly_eval(coef, ext)) <= slack) roots.push_back(ext);
        }
        dprev_x = x;
        dprev = dx;
    }
    std::sort(roots.begin(), roots.end());
    std::vector<double> unique;
    for (double r : roots)
        if (unique.empty() || r - unique.back() > 1e-10) unique.push_back(r);
    return unique;
}

} // namespace

HFVerdict hf_check(const PatternGraph& f, double p, double tol, int grid) {
    const int nf = f.f();
    if (nf < 2) throw std::invalid_argument("hf_check: pattern needs at least 2 vertices");
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("hf_check: p must be in (0,1)");
    if (!(tol > 0.0)) throw std::invalid_argument("hf_check: tolerance must be positive");

    HFVerdict verdict;
    verdict.p = p;
    verdict.p_conjugate = p_bar(f, p, 1e-15);
    verdict.tolerance = tol;

    std::vector<double> levels = {p};
    if (std::abs(verdict.p_conjugate - p) > 1e-14) levels.push_back(verdict.p_conjugate);

    const double target_beta = beta(f, p);
    const auto system_residual = [&](double u, double v, double s) {
        double r = 0.0;
        for (int k = 0; k <= nf; ++k)
            r = std::max(r, std::abs(qk_eval(f, k, u, v, s) - binom(nf, k) * target_beta));
        return r;
    };
    // A tangent root (the forced solution has multiplicity 2 at p = p_F)
    // smears into a residual plateau of width ~sqrt(tol), so closeness to the
    // diagonal cannot be judged by coordinate distance alone: a witness
    // counts only if a residual barrier above tol separates it from the
    // all-equal family.
    const auto separated_from_diagonal = [&](double u, double v, double s) {
        const double m = (u + v + s) / 3.0;
        for (int step = 1; step <= 64; ++step) {
            const double t = static_cast<double>(step) / 65.0;
            if (system_residual(u + t * (m - u), v + t * (m - v), s + t * (m - s)) > tol)
                return true;
        }
        return false;
    };
    for (double u : levels) {
        for (double v : levels) {
            auto poly = qk_s_polynomial(f, 1, u, v);
            poly[0] -= static_cast<double>(nf) * target_beta;
            for (double s : roots_in_unit(poly, grid, tol)) {
                if (s < -1e-12 || s > 1.0 + 1e-12) continue;
                s = std::clamp(s, 0.0, 1.0);
                double residual = 0.0;
                for (int k = 1; k <= nf - 1; ++k)
                    residual = std::max(residual,
                                        std::abs(qk_eval(f, k, u, v, s) - binom(nf, k) * target_beta));
                if (residual > tol) continue;
                const double spread = std::max({std::abs(u - v), std::abs(u - s), std::abs(v - s)});
                if (spread <= tol) continue; // the forced solution u=v=s
                if (!separated_from_diagonal(u, v, s)) continue;
                verdict.witnesses.push_back({u, v, s, residual});
            }
        }
    }
    std::sort(verdict.witnesses.begin(), verdict.witnesses.end(), [](const auto& a, const auto& b) {
        if (a.u != b.u) return a.u < b.u;
        if (a.v != b.v) return a.v < b.v;
        return a.s < b.s;
    });
    verdict.status = verdict.witnesses.empty() ? HFVerdict::Status::certified_at_tolerance
                                               : HFVerdict::Status::counterexample;
    return verdict;
}

MultiaffinePolynomial build_psi_polynomial(const PatternGraph& f, bool induced,
                                           bool symmetrized) {
    const int m = f.f();
    if (symmetrized && m > 8)
        throw std::invalid_argument("build_psi_polynomial: symmetrization supported for f <= 8");
    std::uint32_t edge_mask = 0;
    std::vector<int> nonedge_bits;
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            const int bit = MultiaffinePolynomial::pair_index(i, j, m);
            if (f.has_edge(i, j))
                edge_mask |= std::uint32_t{1} << bit;
            else
                nonedge_bits.push_back(bit);
        }
    }
    if (induced && nonedge_bits.size() > 22)
        throw std::invalid_argument("build_psi_polynomial: induced expansion too large");

    std::map<std::uint32_t, double> acc;
    if (!induced) {
        acc[edge_mask] = 1.0;
    } else {
        for (std::uint32_t sub = 0; sub < (std::uint32_t{1} << nonedge_bits.size()); ++sub) {
            std::uint32_t mask = edge_mask;
            for (std::size_t b = 0; b < nonedge_bits.size(); ++b)
                if ((sub >> b) & 1u) mask |= std::uint32_t{1} << nonedge_bits[b];
            acc[mask] += std::popcount(sub) % 2 ? -1.0 : 1.0;
        }
    }

    if (symmetrized) {
        std::map<std::uint32_t, double> sym;
        std::vector<int> perm(m);
        std::iota(perm.begin(), perm.end(), 0);
        long long count = 0;
        do {
            for (const auto& [mask, c] : acc) {
                std::uint32_t permuted = 0;
                std::uint32_t bits = mask;
                while (bits) {
                    const int bit = std::countr_zero(bits);
                    bits &= bits - 1;
                    // Decode the pair for this bit, then relabel.
                    int i = 0, offset = bit;
                    while (offset >= m - 1 - i) {
                        offset -= m - 1 - i;
                        ++i;
                    }
                    const int j = i + 1 + offset;
                    permuted |= std::uint32_t{1}
                                << MultiaffinePolynomial::pair_index(perm[i], perm[j], m);
                }
                sym[permuted] += c;
            }
            ++count;
        } while (std::next_permutation(perm.begin(), perm.end()));
        for (auto& [mask, c] : sym) c /= static_cast<double>(count);
        acc = std::move(sym);
    }

    MultiaffinePolynomial phi;
    phi.m = m;
    for (const auto& [mask, c] : acc)
        if (c != 0.0) phi.monomials.push_back({c, mask});
    return phi;
}

double two_type_eval(const MultiaffinePolynomial& phi, double u, double v, double s,
                     std::uint32_t a) {
    const int m = phi.m;
    double total = 0.0;
    for (const auto& mono : phi.monomials) {
        int cu = 0, cv = 0, cs = 0;
        std::uint32_t bits = mono.pairs;
        while (bits) {
            const int bit = std::countr_zero(bits);
            bits &= bits - 1;
            int i = 0, offset = bit;
            while (offset >= m - 1 - i) {
                offset -= m - 1 - i;
                ++i;
            }
            const int j = i + 1 + offset;
            const bool ia = (a >> i) & 1u, ja = (a >> j) & 1u;
            if (ia && ja)
                ++cu;
            else if (!ia && !ja)
                ++cv;
            else
                ++cs;
        }
        total += mono.coefficient * ipow(u, cu) * ipow(v, cv) * ipow(s, cs);
    }
    return total;
}

namespace {

double two_type_residual(const MultiaffinePolynomial& phi, double alpha, double u, double v,
                         double s, double abort_above) {
    double worst = 0.0;
    for (std::uint32_t a = 0; a < (std::uint32_t{1} << phi.m); ++a) {
        worst = std::max(worst, std::abs(two_type_eval(phi, u, v, s, a) - alpha));
        if (worst > abort_above) return worst;
    }
    return worst;
}

} // namespace

std::optional<HFWitness> find_two_type_solution(const MultiaffinePolynomial& phi, double alpha,
                                                const TwoTypeSearchOptions& opts) {
    if (phi.m < 2 || phi.m > 16)
        throw std::invalid_argument("find_two_type_solution: supported for 2 <= m <= 16");
    const double tol = opts.tol > 0.0 ? opts.tol : 1e-9;
    const int grid = std::max(opts.grid, 11);

    struct Candidate {
        double residual;
        double u, v, s;
    };
    std::vector<Candidate> pool;
    const auto consider = [&](double u, double v, double s, double& worst_kept) {
        const double spread = std::max({std::abs(u - v), std::abs(u - s), std::abs(v - s)});
        if (spread <= tol) return;
        const double res = two_type_residual(phi, alpha, u, v, s, worst_kept);
        if (res < worst_kept) {
            pool.push_back({res, u, v, s});
            std::sort(pool.begin(), pool.end(),
                      [](const Candidate& a, const Candidate& b) { return a.residual < b.residual; });
            // Keep a handful of well-separated candidates.
            std::vector<Candidate> kept;
            const double sep = 2.0 / (grid - 1);
            for (const auto& c : pool) {
                bool close = false;
                for (const auto& k : kept)
                    close = close || (std::abs(c.u - k.u) < sep && std::abs(c.v - k.v) < sep &&
                                      std::abs(c.s - k.s) < sep);
                if (!close) kept.push_back(c);
                if (kept.size() >= 8) break;
            }
            pool = std::move(kept);
            worst_kept = pool.size() >= 8 ? pool.back().residual : 1e300;
        }
    };

    double worst_kept = 1e300;
    for (int iu = 0; iu < grid; ++iu) {
        const double u = static_cast<double>(iu) / (grid - 1);
        for (int iv = 0; iv < grid; ++iv) {
            const double v = static_cast<double>(iv) / (grid - 1);
            for (int is = 0; is < grid; ++is)
                consider(u, v, static_cast<double>(is) / (grid - 1), worst_kept);
        }
    }
    SplitMix64 rng(opts.seed);
    for (int i = 0; i < 200; ++i)
        consider(rng.next_double(), rng.next_double(), rng.next_double(), worst_kept);

    std::optional<HFWitness> best;
    for (const auto& cand : pool) {
        double x[3] = {cand.u, cand.v, cand.s};
        double res = cand.residual;
        double h = 1.0 / (grid - 1);
        while (h > 1e-14) {
            bool moved = false;
            for (int c = 0; c < 3; ++c) {
                for (double dir : {+1.0, -1.0}) {
                    const double trial = std::clamp(x[c] + dir * h, 0.0, 1.0);
                    if (trial == x[c]) continue;
                    const double old = x[c];
                    x[c] = trial;
                    const double r = two_type_residual(phi, alpha, x[0], x[1], x[2], res);
                    if (r < res) {
                        res = r;
                        moved = true;
                    } else {
                        x[c] = old;
                    }
                }
            }
            if (!moved) h *= 0.5;
        }
        const double spread =
            std::max({std::abs(x[0] - x[1]), std::abs(x[0] - x[2]), std::abs(x[1] - x[2])});
        if (res <= tol && spread > tol) {
            // Same diagonal-barrier rule as the root-based checker: a point
            // inside a residual plateau touching the all-equal line is not a
            // witness at this tolerance.
            const double m = (x[0] + x[1] + x[2]) / 3.0;
            bool barrier = false;
            for (int step = 1; step <= 64 && !barrier; ++step) {
                const double t = static_cast<double>(step) / 65.0;
                barrier = two_type_residual(phi, alpha, x[0] + t * (m - x[0]),
                                            x[1] + t * (m - x[1]), x[2] + t * (m - x[2]),
                                            tol) > tol;
            }
            if (!barrier) continue;
            if (!best || res < best->max_residual) best = HFWitness{x[0], x[1], x[2], res};
        }
    }
    return best;
}

} // namespace graphlim
