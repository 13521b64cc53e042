#include <doctest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>

#include <graphlim/cut.hpp>
#include <graphlim/graph.hpp>
#include <graphlim/kernel.hpp>
#include <graphlim/rng.hpp>

using namespace graphlim;

namespace {

StepKernel random_signed_kernel(SplitMix64& rng, int k) {
    std::vector<double> weights(k);
    double total = 0.0;
    for (double& w : weights) {
        w = 0.1 + rng.next_double();
        total += w;
    }
    for (double& w : weights) w /= total;
    std::vector<std::vector<double>> values(k, std::vector<double>(k));
    for (int i = 0; i < k; ++i)
        for (int j = i; j < k; ++j) values[i][j] = values[j][i] = 2.0 * rng.next_double() - 1.0;
    return StepKernel(weights, values, KernelRange::signed_kernel);
}

StepKernel permute_parts(const StepKernel& w, const std::vector<int>& perm) {
    const int k = w.parts();
    std::vector<double> weights(k);
    std::vector<std::vector<double>> values(k, std::vector<double>(k));
    for (int i = 0; i < k; ++i) {
        weights[i] = w.weight(perm[i]);
        for (int j = 0; j < k; ++j) values[i][j] = w.value(perm[i], perm[j]);
    }
    return StepKernel(weights, values, w.range());
}

} // namespace

TEST_CASE("cut_norm on constant kernels") {
    auto res = cut_norm(constant_kernel(0.35));
    CHECK(res.value == 0.35);
    CHECK(res.exact);
    CHECK(res.witness_s == std::vector<double>{1.0});
    CHECK(res.witness_t == std::vector<double>{1.0});

    auto neg = cut_norm(constant_kernel(-0.2));
    CHECK(neg.value == doctest::Approx(0.2));
}

TEST_CASE("cut_norm vertex-enumeration examples") {
    StepKernel diag({0.5, 0.5}, {{-0.5, 0.0}, {0.0, 0.5}}, KernelRange::signed_kernel);
    auto res = cut_norm(diag);
    CHECK(res.value == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(res.exact);
    // Either single part attains it; the witness must reproduce the value.
    CHECK(std::abs(cut_bilinear(diag, res.witness_s, res.witness_t)) ==
          doctest::Approx(0.125).epsilon(1e-12));
}

TEST_CASE("cut_norm of W_K2 minus one half") {
    Graph k2(2, {{0, 1}});
    StepKernel half({0.5, 0.5}, {{0.5, 0.5}, {0.5, 0.5}}, KernelRange::graphon);
    StepKernel diff = kernel_difference(step_from_graph(k2), half);
    CHECK(diff.value(0, 0) == doctest::Approx(-0.5));
    CHECK(diff.value(0, 1) == doctest::Approx(0.5));
    auto res = cut_norm(diff);
    CHECK(res.value == doctest::Approx(0.125).epsilon(1e-12));
}

TEST_CASE("exact cut_norm matches full (S,T) double enumeration") {
    SplitMix64 rng(30);
    for (int trial = 0; trial < 15; ++trial) {
        const int k = 2 + static_cast<int>(rng.next_below(4));
        StepKernel w = random_signed_kernel(rng, k);
        double brute = 0.0;
        for (std::uint32_t sm = 0; sm < (1u << k); ++sm) {
            for (std::uint32_t tm = 0; tm < (1u << k); ++tm) {
                std::vector<double> s(k, 0.0), t(k, 0.0);
                for (int i = 0; i < k; ++i) {
                    s[i] = (sm >> i) & 1u ? 1.0 : 0.0;
                    t[i] = (tm >> i) & 1u ? 1.0 : 0.0;
                }
                brute = std::max(brute, std::abs(cut_bilinear(w, s, t)));
            }
        }
        CHECK(cut_norm(w).value == doctest::Approx(brute).epsilon(1e-12));
    }
}

TEST_CASE("witness re-evaluation reproduces the value") {
    SplitMix64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        StepKernel w = random_signed_kernel(rng, 2 + static_cast<int>(rng.next_below(5)));
        auto res = cut_norm(w);
        CHECK(std::abs(cut_bilinear(w, res.witness_s, res.witness_t)) ==
              doctest::Approx(res.value).epsilon(1e-12));
    }
}

TEST_CASE("cut_norm is bounded by the L1 norm") {
    SplitMix64 rng(32);
    for (int trial = 0; trial < 20; ++trial) {
        StepKernel w = random_signed_kernel(rng, 2 + static_cast<int>(rng.next_below(5)));
        double l1 = 0.0;
        for (int i = 0; i < w.parts(); ++i)
            for (int j = 0; j < w.parts(); ++j)
                l1 += w.weight(i) * w.weight(j) * std::abs(w.value(i, j));
        CHECK(cut_norm(w).value <= l1 + 1e-12);
    }
}

TEST_CASE("cut_norm is invariant under simultaneous part permutation") {
    SplitMix64 rng(33);
    for (int trial = 0; trial < 10; ++trial) {
        const int k = 3 + static_cast<int>(rng.next_below(3));
        StepKernel w = random_signed_kernel(rng, k);
        std::vector<int> perm(k);
        std::iota(perm.begin(), perm.end(), 0);
        for (int i = k - 1; i > 0; --i)
            std::swap(perm[i], perm[rng.next_below(static_cast<std::uint64_t>(i) + 1)]);
        CHECK(cut_norm(w).value ==
              doctest::Approx(cut_norm(permute_parts(w, perm)).value).epsilon(1e-12));
    }
}

TEST_CASE("alternating heuristic never beats and usually matches the exact optimum") {
    SplitMix64 rng(34);
    for (int trial = 0; trial < 40; ++trial) {
        StepKernel w = random_signed_kernel(rng, 2 + static_cast<int>(rng.next_below(3)));
        const double exact = cut_norm(w).value;
        CutNormOptions heur;
        heur.exact_threshold = 0; // force the heuristic path
        heur.restarts = 20;
        heur.seed = trial;
        const auto approx = cut_norm(w, heur);
        CHECK_FALSE(approx.exact);
        CHECK(approx.value <= exact + 1e-12);
        CHECK(approx.value == doctest::Approx(exact).epsilon(1e-9));
    }
}

TEST_CASE("counting lemma consistency") {
    SplitMix64 rng(35);
    for (int trial = 0; trial < 10; ++trial) {
        const int k = 2 + static_cast<int>(rng.next_below(3));
        std::vector<double> weights(k);
        double total = 0.0;
        for (double& x : weights) {
            x = 0.2 + rng.next_double();
            total += x;
        }
        for (double& x : weights) x /= total;
        auto draw = [&]() {
            std::vector<std::vector<double>> values(k, std::vector<double>(k));
            for (int i = 0; i < k; ++i)
                for (int j = i; j < k; ++j) values[i][j] = values[j][i] = rng.next_double();
            return StepKernel(weights, values, KernelRange::graphon);
        };
        StepKernel w1 = draw(), w2 = draw();
        const double dist = cut_norm(kernel_difference(w1, w2)).value;
        for (const auto& f : {pattern_k2(), pattern_p3(), pattern_k3(), pattern_c4()}) {
            const double gap = std::abs(t_density(f, w1, false) - t_density(f, w2, false));
            CHECK(gap <= f.e() * dist + 1e-9);
        }
    }
}

TEST_CASE("kernel_difference") {
    SplitMix64 rng(36);
    StepKernel w = random_signed_kernel(rng, 3);
    StepKernel zero = kernel_difference(w, w);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(zero.value(i, j) == 0.0);
    CHECK(cut_norm(zero).value == 0.0);

    StepKernel a = constant_kernel(0.8), b = constant_kernel(0.3);
    CHECK(kernel_difference(a, b).value(0, 0) == doctest::Approx(0.5));

    StepKernel other({0.4, 0.6}, {{0, 0}, {0, 0}}, KernelRange::graphon);
    StepKernel even({0.5, 0.5}, {{0, 0}, {0, 0}}, KernelRange::graphon);
    CHECK_THROWS_AS(kernel_difference(other, even), std::invalid_argument);
    CHECK_THROWS_AS(kernel_difference(constant_kernel(0.1), even), std::invalid_argument);
}

TEST_CASE("blowup") {
    SplitMix64 rng(37);
    StepKernel w = random_signed_kernel(rng, 2);
    StepKernel same = blowup(w, 1);
    CHECK(same.parts() == 2);
    CHECK(same.value(0, 1) == w.value(0, 1));

    StepKernel three = blowup(w, 3);
    CHECK(three.parts() == 6);
    for (const auto& f : {pattern_k2(), pattern_p3(), pattern_c4()})
        CHECK(t_density(f, three, false) ==
              doctest::Approx(t_density(f, w, false)).epsilon(1e-12));

    CHECK(blowup(w, 2).parts() == 4);
    CHECK_THROWS_AS(blowup(w, 0), std::invalid_argument);
}

TEST_CASE("cut_distance_graphs on identical and relabelled graphs") {
    Graph g = gen_gnp(7, 0.5, 11);
    auto self_dist = cut_distance_graphs(g, g);
    CHECK(self_dist.value == 0.0);
    CHECK(self_dist.exact);
    CHECK(self_dist.note == "permutation-upper-bound");

    // A relabelled copy is found by the exhaustive search.
    std::vector<int> perm = {3, 0, 6, 2, 5, 1, 4};
    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : g.edges()) edges.emplace_back(perm[u], perm[v]);
    Graph h(7, edges);
    CHECK(cut_distance_graphs(g, h).value == 0.0);
}

TEST_CASE("cut_distance_graphs of empty vs complete") {
    Graph empty(2, {});
    Graph k2(2, {{0, 1}});
    auto res = cut_distance_graphs(empty, k2);
    CHECK(res.value == doctest::Approx(0.5));
}

TEST_CASE("cut_distance_graphs input validation") {
    CHECK_THROWS_AS(cut_distance_graphs(Graph(3, {}), Graph(4, {})), std::invalid_argument);
    CHECK_THROWS_AS(cut_distance_graphs(Graph(0, {}), Graph(0, {})), std::invalid_argument);
}

TEST_CASE("cut_distance_graphs local search stays a deterministic upper bound") {
    Graph g = gen_gnp(24, 0.4, 2);
    std::vector<int> perm(24);
    std::iota(perm.begin(), perm.end(), 0);
    SplitMix64 rng(12);
    for (int i = 23; i > 0; --i)
        std::swap(perm[i], perm[rng.next_below(static_cast<std::uint64_t>(i) + 1)]);
    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : g.edges()) edges.emplace_back(perm[u], perm[v]);
    Graph h(24, edges);

    auto a = cut_distance_graphs(g, h, 6, 5);
    auto b = cut_distance_graphs(g, h, 6, 5);
    CHECK(a.value == b.value);
    CHECK_FALSE(a.exact);
    CHECK(a.note == "permutation-upper-bound");
    // The identity permutation is always a valid relabelling, so the search
    // result can never exceed the unpermuted difference.
    const double unpermuted =
        cut_norm(kernel_difference(step_from_graph(g), step_from_graph(h))).value;
    CHECK(a.value <= unpermuted + 1e-12);
    // Greedy mismatch descent recovers the relabelling here.
    CHECK(a.value == doctest::Approx(0.0));
}
