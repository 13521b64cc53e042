#include "graphlim/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "graphlim/rng.hpp"

namespace graphlim {

namespace {

constexpr double kWeightSlack = 1e-12;
constexpr double kRangeSlack = 1e-12;

} // namespace

StepKernel::StepKernel(std::vector<double> weights, std::vector<std::vector<double>> values,
                       KernelRange range)
    : k_(static_cast<int>(weights.size())),
      weights_(std::move(weights)),
      values_(std::move(values)),
      range_(range) {
    if (k_ < 1) throw std::invalid_argument("kernel: needs at least one part");
    double total = 0.0;
    for (double w : weights_) {
        if (!(w > 0.0)) throw std::invalid_argument("kernel: part weights must be positive");
        total += w;
    }
    if (std::abs(total - 1.0) > kWeightSlack)
        throw std::invalid_argument("kernel: part weights must sum to 1");
    if (static_cast<int>(values_.size()) != k_)
        throw std::invalid_argument("kernel: value matrix size mismatch");
    const double lo = range_ == KernelRange::graphon ? 0.0 : -1.0;
    for (int i = 0; i < k_; ++i) {
        if (static_cast<int>(values_[i].size()) != k_)
            throw std::invalid_argument("kernel: value matrix size mismatch");
        for (int j = 0; j < k_; ++j) {
            if (std::abs(values_[i][j] - values_[j][i]) > kRangeSlack)
                throw std::invalid_argument("kernel: value matrix must be symmetric");
            if (values_[i][j] < lo - kRangeSlack || values_[i][j] > 1.0 + kRangeSlack)
                throw std::invalid_argument("kernel: value outside the declared range");
        }
    }
}

double StepKernel::marginal(int i) const {
    double m = 0.0;
    for (int j = 0; j < k_; ++j) m += weights_[j] * values_[i][j];
    return m;
}

StepKernel constant_kernel(double p) {
    return StepKernel({1.0}, {{p}}, p >= 0.0 ? KernelRange::graphon : KernelRange::signed_kernel);
}

StepKernel step_from_graph(const Graph& g) {
    if (g.n() == 0) throw std::invalid_argument("step_from_graph: empty graph");
    const int n = g.n();
    std::vector<double> weights(n, 1.0 / n);
    std::vector<std::vector<double>> values(n, std::vector<double>(n, 0.0));
    for (auto [u, v] : g.edges()) values[u][v] = values[v][u] = 1.0;
    return StepKernel(std::move(weights), std::move(values), KernelRange::graphon);
}

StepKernel two_type(double u, double v, double s, double w1) {
    if (!(w1 > 0.0 && w1 < 1.0)) throw std::invalid_argument("two_type: w1 must be in (0,1)");
    for (double x : {u, v, s})
        if (x < 0.0 || x > 1.0) throw std::invalid_argument("two_type: values must be in [0,1]");
    return StepKernel({w1, 1.0 - w1}, {{u, s}, {s, v}}, KernelRange::graphon);
}

double BoxSpec::measure(int i, const StepKernel& w) const {
    double m = 0.0;
    for (int j = 0; j < w.parts(); ++j) m += fractions.at(i).at(j) * w.weight(j);
    return m;
}

namespace {

double psi_plain(const PatternGraph& f, const StepKernel& w, const int* parts, bool induced) {
    double prod = 1.0;
    const int nf = f.f();
    for (int i = 0; i < nf; ++i) {
        for (int j = i + 1; j < nf; ++j) {
            const double wij = w.value(parts[i], parts[j]);
            if (f.has_edge(i, j))
                prod *= wij;
            else if (induced)
                prod *= 1.0 - wij;
        }
    }
    return prod;
}

double psi_at(const PatternGraph& f, const StepKernel& w, const std::vector<int>& parts,
              bool induced, bool symmetrized) {
    const int nf = f.f();
    if (!symmetrized) return psi_plain(f, w, parts.data(), induced);
    if (nf > 8) throw std::invalid_argument("psi: symmetrization supported for f <= 8 only");
    // Average over all f! relabellings.
    double sum = 0.0;
    long long count = 0;
    std::vector<int> idx(nf);
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<int> arranged(nf);
    do {
        for (int i = 0; i < nf; ++i) arranged[i] = parts[idx[i]];
        sum += psi_plain(f, w, arranged.data(), induced);
        ++count;
    } while (std::next_permutation(idx.begin(), idx.end()));
    return sum / static_cast<double>(count);
}

// Shared tuple sum: sum over part tuples of prod_i coef[i][part_i] * Psi.
double tuple_sum(const PatternGraph& f, const StepKernel& w,
                 const std::vector<std::vector<double>>& coef, bool induced) {
    const int nf = f.f();
    const int k = w.parts();
    std::vector<int> tuple(nf, 0);
    double total = 0.0;
    while (true) {
        double c = 1.0;
        for (int i = 0; i < nf; ++i) c *= coef[i][tuple[i]];
        if (c != 0.0) total += c * psi_plain(f, w, tuple.data(), induced);
        int pos = nf - 1;
        while (pos >= 0 && ++tuple[pos] == k) tuple[pos--] = 0;
        if (pos < 0) break;
    }
    return total;
}

} // namespace

double psi_eval(const PatternGraph& f, const StepKernel& w, const std::vector<int>& parts,
                bool induced, bool symmetrized) {
    if (static_cast<int>(parts.size()) != f.f())
        throw std::invalid_argument("psi_eval: need one part index per pattern vertex");
    for (int p : parts)
        if (p < 0 || p >= w.parts()) throw std::invalid_argument("psi_eval: part index out of range");
    return psi_at(f, w, parts, induced, symmetrized);
}

double t_density(const PatternGraph& f, const StepKernel& w, bool induced) {
    std::vector<std::vector<double>> coef(f.f(), w.weights());
    return tuple_sum(f, w, coef, induced);
}

double box_integral(const PatternGraph& f, const StepKernel& w, const BoxSpec& boxes,
                    bool induced) {
    const int nf = f.f();
    if (static_cast<int>(boxes.fractions.size()) != nf)
        throw std::invalid_argument("box_integral: need one box per pattern vertex");
    std::vector<std::vector<double>> coef(nf, std::vector<double>(w.parts()));
    for (int i = 0; i < nf; ++i) {
        if (static_cast<int>(boxes.fractions[i].size()) != w.parts())
            throw std::invalid_argument("box_integral: box fraction vector size mismatch");
        for (int j = 0; j < w.parts(); ++j) {
            const double a = boxes.fractions[i][j];
            if (a < 0.0 || a > 1.0)
                throw std::invalid_argument("box_integral: fractions must be in [0,1]");
            coef[i][j] = a * w.weight(j);
        }
    }
    return tuple_sum(f, w, coef, induced);
}

double psi_constant_dev(const PatternGraph& f, const StepKernel& w, double alpha,
                        bool induced, bool symmetrized) {
    const int nf = f.f();
    const int k = w.parts();
    std::vector<int> tuple(nf, 0);
    double dev = 0.0;
    while (true) {
        dev = std::max(dev, std::abs(psi_at(f, w, tuple, induced, symmetrized) - alpha));
        int pos = nf - 1;
        while (pos >= 0 && ++tuple[pos] == k) tuple[pos--] = 0;
        if (pos < 0) break;
    }
    return dev;
}

Graph sample_graph(const StepKernel& w, int n, std::uint64_t seed) {
    if (n < 0) throw std::invalid_argument("sample_graph: negative n");
    if (w.range() != KernelRange::graphon)
        throw std::invalid_argument("sample_graph: needs a [0,1] kernel");
    SplitMix64 rng(seed);
    std::vector<int> label(n, 0);
    for (int v = 0; v < n; ++v) {
        double x = rng.next_double();
        double acc = 0.0;
        for (int j = 0; j < w.parts(); ++j) {
            acc += w.weight(j);
            if (x < acc || j == w.parts() - 1) {
                label[v] = j;
                break;
            }
        }
    }
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.next_double() < w.value(label[i], label[j])) edges.emplace_back(i, j);
    return Graph(n, edges);
}

double w_degree_moment(const StepKernel& w, int k) {
    if (k < 1) throw std::invalid_argument("w_degree_moment: k must be >= 1");
    double sum = 0.0;
    for (int i = 0; i < w.parts(); ++i) sum += w.weight(i) * std::pow(w.marginal(i), k);
    return sum;
}

bool is_p_regular(const StepKernel& w, double p, double tol) {
    for (int i = 0; i < w.parts(); ++i)
        if (std::abs(w.marginal(i) - p) > tol) return false;
    return true;
}

} // namespace graphlim
