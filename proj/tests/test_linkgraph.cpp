#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "polyrank/linkgraph.hpp"

#include <cmath>

using namespace polyrank;

TEST_CASE("girth basics") {
    LinkGraph tri(3);
    tri.add_edge(0, 1);
    tri.add_edge(1, 2);
    tri.add_edge(2, 0);
    CHECK(girth(tri) == 3);

    LinkGraph path(4);
    path.add_edge(0, 1);
    path.add_edge(1, 2);
    path.add_edge(2, 3);
    CHECK(girth(path) == kGirthInfinity);

    LinkGraph c6(6);
    for (int i = 0; i < 6; i++) c6.add_edge(i, (i + 1) % 6);
    CHECK(girth(c6) == 6);

    CHECK(girth(make_heawood()) == 6);
    CHECK(girth(make_l74()) == 6);
    CHECK(girth(make_gp(5, 2)) == 5);  // Petersen graph
}

TEST_CASE("is_ample") {
    CHECK(is_ample(make_heawood()));
    CHECK(is_ample(make_l74()));
    CHECK_FALSE(is_ample(make_gp(5, 2)));  // girth 5
    LinkGraph k4(4);
    for (int i = 0; i < 4; i++)
        for (int j = i + 1; j < 4; j++) k4.add_edge(i, j);
    CHECK_FALSE(is_ample(k4));
    // disconnected union of two Heawoods is trivalent girth 6 but not ample
    LinkGraph two(28);
    LinkGraph h = make_heawood();
    for (int u = 0; u < 14; u++)
        for (int v = u + 1; v < 14; v++)
            if (h.has_edge(u, v)) {
                two.add_edge(u, v);
                two.add_edge(14 + u, 14 + v);
            }
    CHECK_FALSE(two.connected());
    CHECK_FALSE(is_ample(two));
}

TEST_CASE("canonical form and isomorphism") {
    LinkGraph h = make_heawood();
    // a scrambled relabeling of the Heawood graph
    std::vector<int> p(14);
    for (int i = 0; i < 14; i++) p[i] = (5 * i + 3) % 14;
    LinkGraph h2(14);
    for (int u = 0; u < 14; u++)
        for (int v = u + 1; v < 14; v++)
            if (h.has_edge(u, v)) h2.add_edge(p[u], p[v]);
    CHECK(canonical_form(h) == canonical_form(h2));
    CHECK(graphs_isomorphic(h, h2));
    CHECK_FALSE(graphs_isomorphic(h, make_gp(7, 2)));

    std::vector<int> relabel;
    LinkGraph c = canonical_form(h, &relabel);
    LinkGraph check(14);
    for (int u = 0; u < 14; u++)
        for (int v = u + 1; v < 14; v++)
            if (h.has_edge(u, v)) check.add_edge(relabel[u], relabel[v]);
    CHECK(check == c);
}

TEST_CASE("two constructions of the rank 7/4 link agree") {
    CHECK(graphs_isomorphic(make_l74(), make_l74_from_factor()));
    CHECK_FALSE(graphs_isomorphic(make_l74(), make_gp(8, 2)));
}

TEST_CASE("enumeration of ample cubic graphs") {
    CHECK(enumerate_ample_cubic(12).size() == 0);
    auto g14 = enumerate_ample_cubic(14);
    REQUIRE(g14.size() == 1);
    CHECK(graphs_isomorphic(g14[0], make_heawood()));
    auto g16 = enumerate_ample_cubic(16);
    REQUIRE(g16.size() == 1);
    CHECK(graphs_isomorphic(g16[0], make_l74()));
}

TEST_CASE("random walk spectrum of the rank 7/4 link") {
    Spectrum s = random_walk_spectrum(make_l74());
    REQUIRE(s.eigenvalues.size() == 6);
    double r3 = 1.0 / std::sqrt(3.0);
    double expect[6] = {1.0, r3, 1.0 / 3.0, -1.0 / 3.0, -r3, -1.0};
    int mult[6] = {1, 4, 3, 3, 4, 1};
    for (int i = 0; i < 6; i++) {
        CHECK(s.eigenvalues[i].first == doctest::Approx(expect[i]).epsilon(1e-12));
        CHECK(s.eigenvalues[i].second == mult[i]);
    }
    CHECK(s.lambda1 == doctest::Approx(1.0 - r3).epsilon(1e-12));
    // bipartite: spectrum symmetric about 0
    for (int i = 0; i < 6; i++) {
        CHECK(s.eigenvalues[i].first == doctest::Approx(-s.eigenvalues[5 - i].first));
        CHECK(s.eigenvalues[i].second == s.eigenvalues[5 - i].second);
    }
}

TEST_CASE("pair types in the rank 7/4 link") {
    LinkGraph g = make_l74();
    auto d = g.distances();
    for (int v = 0; v < 16; v++) {
        int t32 = 0, t2 = 0, other = 0, far4 = 0;
        for (int u = 0; u < 16; u++) {
            if (d[v][u] == 4) far4++;
            if (d[v][u] != 3) continue;
            switch (pair_type(g, v, u)) {
                case PairType::Type32: t32++; break;
                case PairType::Type2: t2++; break;
                default: other++; break;
            }
        }
        CHECK(t32 == 3);
        CHECK(t2 == 2);
        CHECK(other == 0);
        CHECK(far4 == 1);  // unique antipode, diameter 4
    }
}

TEST_CASE("pair types in the Heawood graph are all Type2") {
    LinkGraph g = make_heawood();
    auto d = g.distances();
    for (int v = 0; v < 14; v++)
        for (int u = 0; u < 14; u++)
            if (d[v][u] == 3) CHECK(pair_type(g, v, u) == PairType::Type2);
}

TEST_CASE("six cycle analysis") {
    LinkGraph g = make_l74();
    auto cycles = six_cycle_analysis(g);
    CHECK(cycles.size() == 24);
    for (const auto& c : cycles) {
        int t32 = 0, t2 = 0;
        for (auto t : c.antipodal) {
            if (t == PairType::Type32) t32++;
            if (t == PairType::Type2) t2++;
        }
        CHECK(t32 == 1);
        CHECK(t2 == 2);
    }
    auto hc = six_cycle_analysis(make_heawood());
    CHECK(hc.size() == 28);
    for (const auto& c : hc)
        for (auto t : c.antipodal) CHECK(t == PairType::Type2);
}

TEST_CASE("automorphism groups") {
    AutReport l = automorphism_group_order(make_l74());
    CHECK(l.order == 96);
    CHECK(l.tripod_transitive);
    CHECK(l.tripod_setwise_stabilizer == 6);
    CHECK(l.tripod_pointwise_trivial);

    AutReport h = automorphism_group_order(make_heawood());
    CHECK(h.order == 336);
    CHECK(h.tripod_transitive);  // transitive but not simply: 336 = 4 * 84
    CHECK(h.tripod_setwise_stabilizer == 24);
    CHECK_FALSE(h.tripod_pointwise_trivial);

    auto autos = automorphisms(make_l74());
    CHECK(autos.size() == 96);
    LinkGraph g = make_l74();
    for (const auto& a : autos)
        for (int u = 0; u < 16; u++)
            for (int v = u + 1; v < 16; v++)
                CHECK(g.has_edge(u, v) == g.has_edge(a[u], a[v]));
}

TEST_CASE("graph text round trip") {
    LinkGraph g = make_l74();
    LinkGraph h = parse_graph_text(graph_to_text(g));
    CHECK(g == h);
}
