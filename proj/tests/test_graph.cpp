#include "csvortex/graph.hpp"
#include "csvortex/graph_io.hpp"

#include "helpers.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>
#include <sstream>

using namespace csvortex;
using namespace csvortex::testing;

TEST_CASE("laplacian annihilates constants") {
    const WeightedGraph g = make_complete(3, 2.0, 1.5);
    const VertexField lap = laplacian(g, constant_field(g, 3.7));
    for (std::size_t x = 0; x < g.size(); ++x) {
        CHECK(lap[x] == 0.0);
    }
}

TEST_CASE("laplacian on the two-vertex path by hand") {
    const WeightedGraph g = make_path(2);
    const VertexField u(g, std::vector<double>{0.0, 1.0});
    const VertexField lap = laplacian(g, u);
    CHECK(lap[0] == doctest::Approx(1.0));
    CHECK(lap[1] == doctest::Approx(-1.0));
}

TEST_CASE("integral of the laplacian vanishes") {
    std::mt19937 rng(11);
    const WeightedGraph k3 = make_complete(3);
    const WeightedGraph r = make_random_connected(12, 6, 5, 0.5, 2.0, 0.5, 2.0);
    for (const WeightedGraph* g : {&k3, &r}) {
        for (int rep = 0; rep < 20; ++rep) {
            const VertexField u = random_field(*g, rng, -5.0, 5.0);
            const VertexField lap = laplacian(*g, u);
            // brute-force summation oracle: symmetry of the weights forces
            // exact cancellation
            double total = 0.0;
            for (std::size_t x = 0; x < g->size(); ++x) {
                total += g->mu(x) * lap[x];
            }
            CHECK(std::abs(total) <= 1e-12);
            CHECK(std::abs(integrate(*g, lap)) <= 1e-12);
        }
    }
}

TEST_CASE("gamma on the two-vertex path by hand") {
    const WeightedGraph g = make_path(2);
    const VertexField u(g, std::vector<double>{0.0, 1.0});
    const VertexField v(g, std::vector<double>{0.0, 2.0});
    const VertexField form = gamma(g, u, v);
    CHECK(form[0] == doctest::Approx(1.0));
    CHECK(form[1] == doctest::Approx(1.0));
}

TEST_CASE("gamma of a constant vanishes and gamma(u,u) is nonnegative") {
    std::mt19937 rng(13);
    const WeightedGraph g = make_random_connected(10, 5, 17, 0.5, 2.0, 0.5, 2.0);
    const VertexField c = constant_field(g, -2.4);
    const VertexField v = random_field(g, rng);
    const VertexField zero = gamma(g, c, v);
    for (std::size_t x = 0; x < g.size(); ++x) {
        CHECK(zero[x] == 0.0);
    }
    const VertexField u = random_field(g, rng);
    const VertexField grad2 = gamma(g, u, u);
    const auto expected = oracle_gamma(g, u, u);
    for (std::size_t x = 0; x < g.size(); ++x) {
        CHECK(grad2[x] >= 0.0);
        CHECK(grad2[x] == doctest::Approx(expected[x]).epsilon(1e-13));
    }
}

TEST_CASE("integration basics") {
    const WeightedGraph k4 = make_complete(4);
    CHECK(integrate(k4, constant_field(k4, 1.0)) == doctest::Approx(4.0));
    CHECK(k4.total_volume() == doctest::Approx(4.0));

    const WeightedGraph g = make_cycle(5, 1.3, 0.7);
    CHECK(integrate(g, constant_field(g, 1.0)) == doctest::Approx(g.total_volume()));

    std::mt19937 rng(3);
    const VertexField u = random_field(g, rng);
    CHECK(integrate(g, u) == doctest::Approx(oracle_integral(g, u)).epsilon(1e-14));
}

TEST_CASE("sobolev norm") {
    const WeightedGraph k4 = make_complete(4);
    CHECK(sobolev_norm(k4, VertexField(k4)) == 0.0);
    CHECK(sobolev_norm(k4, constant_field(k4, 1.0)) == doctest::Approx(2.0));

    // composition oracle: sqrt(∫Γ(u,u) + ∫u²)
    const WeightedGraph c5 = make_cycle(5, 0.9, 1.4);
    std::mt19937 rng(29);
    const VertexField u = random_field(c5, rng, -2.0, 2.0);
    const double grad_part = integrate(c5, gamma(c5, u, u));
    double square_part = 0.0;
    for (std::size_t x = 0; x < c5.size(); ++x) {
        square_part += c5.mu(x) * u[x] * u[x];
    }
    CHECK(sobolev_norm(c5, u) ==
          doctest::Approx(std::sqrt(grad_part + square_part)).epsilon(1e-13));
}

TEST_CASE("mean and split") {
    const WeightedGraph p2 = make_path(2);
    CHECK(mean(p2, constant_field(p2, 5.0)) == doctest::Approx(5.0));

    const VertexField u(p2, std::vector<double>{0.0, 2.0});
    const auto [m, fluct] = split(p2, u);
    CHECK(m == doctest::Approx(1.0));
    CHECK(fluct[0] == doctest::Approx(-1.0));
    CHECK(fluct[1] == doctest::Approx(1.0));

    std::mt19937 rng(41);
    const WeightedGraph g = make_random_connected(14, 8, 9, 0.5, 2.0, 0.5, 2.0);
    for (int rep = 0; rep < 10; ++rep) {
        const VertexField w = random_field(g, rng, -10.0, 10.0);
        const auto [wm, wf] = split(g, w);
        CHECK(std::abs(integrate(g, wf)) <= 1e-12 * (1.0 + std::abs(wm) * g.total_volume()));
    }
}

TEST_CASE("Green identity on random fields") {
    std::mt19937 rng(7);
    const WeightedGraph graphs[] = {make_complete(4), make_cycle(7, 1.2, 0.6),
                                    make_random_connected(15, 10, 23, 0.5, 2.0, 0.5, 2.0)};
    for (const WeightedGraph& g : graphs) {
        for (int rep = 0; rep < 30; ++rep) {
            const VertexField u = random_field(g, rng, -3.0, 3.0);
            const VertexField v = random_field(g, rng, -3.0, 3.0);
            const double lhs = integrate(g, gamma(g, u, v));
            const double rhs1 = -integrate(g, VertexField(g, Eigen::VectorXd(
                                                  u.values().cwiseProduct(
                                                      laplacian(g, v).values()))));
            const double rhs2 = -integrate(g, VertexField(g, Eigen::VectorXd(
                                                  v.values().cwiseProduct(
                                                      laplacian(g, u).values()))));
            const double scale = 1.0 + std::abs(lhs);
            CHECK(std::abs(lhs - rhs1) <= 1e-12 * scale);
            CHECK(std::abs(lhs - rhs2) <= 1e-12 * scale);
        }
    }
}

TEST_CASE("laplacian is linear") {
    std::mt19937 rng(19);
    const WeightedGraph g = make_cycle(6, 1.1, 2.0);
    const VertexField u = random_field(g, rng);
    const VertexField v = random_field(g, rng);
    const double a = 2.5;
    const double b = -1.25;
    const VertexField combo(g, Eigen::VectorXd(a * u.values() + b * v.values()));
    const VertexField lhs = laplacian(g, combo);
    const Eigen::VectorXd rhs =
        a * laplacian(g, u).values() + b * laplacian(g, v).values();
    CHECK((lhs.values() - rhs).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("laplacian is nonpositive at a maximum") {
    std::mt19937 rng(31);
    const WeightedGraph g = make_random_connected(20, 15, 77, 0.5, 2.0, 0.5, 2.0);
    for (int rep = 0; rep < 50; ++rep) {
        const VertexField u = random_field(g, rng, -4.0, 4.0);
        std::size_t argmax = 0;
        for (std::size_t x = 1; x < g.size(); ++x) {
            if (u[x] > u[argmax]) {
                argmax = x;
            }
        }
        CHECK(laplacian(g, u)[argmax] <= 0.0);
    }
}

TEST_CASE("graph construction validates its input") {
    using V = std::vector<std::pair<std::string, double>>;
    using E = std::vector<std::tuple<std::string, std::string, double>>;

    CHECK_THROWS_AS(WeightedGraph(V{}, E{}), std::invalid_argument);
    CHECK_THROWS_AS(WeightedGraph(V{{"a", 1.0}, {"a", 1.0}}, E{}), std::invalid_argument);
    CHECK_THROWS_AS(WeightedGraph(V{{"a", 0.0}}, E{}), std::invalid_argument);
    CHECK_THROWS_AS(WeightedGraph(V{{"a", 1.0}, {"b", 1.0}}, E{{"a", "a", 1.0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(WeightedGraph(V{{"a", 1.0}, {"b", 1.0}}, E{{"a", "b", -2.0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        WeightedGraph(V{{"a", 1.0}, {"b", 1.0}}, E{{"a", "b", 1.0}, {"b", "a", 2.0}}),
        std::invalid_argument);
    CHECK_THROWS_AS(WeightedGraph(V{{"a", 1.0}, {"b", 1.0}}, E{{"a", "c", 1.0}}),
                    std::invalid_argument);
    // disconnected
    CHECK_THROWS_AS(
        WeightedGraph(V{{"a", 1.0}, {"b", 1.0}, {"c", 1.0}}, E{{"a", "b", 1.0}}),
        std::invalid_argument);
}

TEST_CASE("vertex order is sorted identifiers") {
    const WeightedGraph g({{"zz", 1.0}, {"aa", 1.0}, {"mm", 1.0}},
                          {{"zz", "aa", 1.0}, {"aa", "mm", 1.0}});
    CHECK(g.ids() == std::vector<std::string>{"aa", "mm", "zz"});
    CHECK(g.index_of("mm") == 1);
    CHECK_THROWS_AS(g.index_of("nope"), std::invalid_argument);
}

TEST_CASE("field binding and validation") {
    const WeightedGraph g = make_complete(3);
    const WeightedGraph h = make_complete(3);
    const VertexField u(g);
    CHECK(u.bound_to(g));
    CHECK(!u.bound_to(h));
    CHECK_THROWS_AS(laplacian(h, u), std::invalid_argument);
    CHECK_THROWS_AS(integrate(h, u), std::invalid_argument);
    CHECK_THROWS_AS(gamma(g, u, VertexField(h)), std::invalid_argument);

    CHECK_THROWS_AS(VertexField(g, std::vector<double>{1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(
        VertexField(g, std::vector<double>{1.0, std::numeric_limits<double>::infinity(), 0.0}),
        std::invalid_argument);

    // copies of a graph handle keep the same identity
    const WeightedGraph g2 = g;
    CHECK(u.bound_to(g2));
}

TEST_CASE("graph text format round trip") {
    std::istringstream in(
        "# sample\n"
        "v a 1.0\n"
        "v b 2.0\n"
        "\n"
        "e a b 1.5\n");
    const WeightedGraph g = parse_graph(in, "sample");
    CHECK(g.size() == 2);
    CHECK(g.mu(g.index_of("b")) == doctest::Approx(2.0));
    CHECK(g.edges().size() == 1);
    CHECK(g.edges()[0].weight == doctest::Approx(1.5));
}

TEST_CASE("graph parser reports line numbers") {
    const auto expect_line = [](const char* text, std::size_t line) {
        std::istringstream in(text);
        try {
            parse_graph(in, "bad");
            FAIL("expected ParseError");
        } catch (const ParseError& err) {
            CHECK(err.line() == line);
            CHECK(std::string(err.what()).find("bad:" + std::to_string(line)) !=
                  std::string::npos);
        }
    };
    expect_line("v a 1.0\nv b\n", 2);
    expect_line("v a 1.0\nv b 2.0\ne a b oops\n", 3);
    expect_line("v a 1.0\nx q 1.0\n", 2);
    expect_line("v a 1.0\nv b 1.0\ne a b 1.0\ne b a 2.0\n", 4);
    expect_line("v a 1.0\nv a 2.0\n", 2);
    expect_line("v a 1.0\nv b 1.0\ne a c 1.0\n", 3);
    expect_line("v a -1.0\n", 1);
    expect_line("", 1);
}
