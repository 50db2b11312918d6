#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "polyrank/homology.hpp"

#include <random>

using namespace polyrank;

namespace {

IntMatrix from_rows(std::vector<std::vector<long long>> rows) {
    IntMatrix m((int)rows.size(), (int)rows[0].size());
    for (int i = 0; i < m.rows; i++)
        for (int j = 0; j < m.cols; j++) m.at(i, j) = rows[i][j];
    return m;
}

void check_snf(const IntMatrix& m) {
    SmithResult s = smith_normal_form(m);
    // exact unimodularity certificates: transform times inverse is identity
    CHECK(multiply(s.left, s.left_inv) == IntMatrix::identity(m.rows));
    CHECK(multiply(s.right, s.right_inv) == IntMatrix::identity(m.cols));
    IntMatrix d = multiply(multiply(s.left, m), s.right);
    int n = std::min(m.rows, m.cols);
    for (int i = 0; i < m.rows; i++)
        for (int j = 0; j < m.cols; j++)
            CHECK(d.at(i, j) == ((i == j && i < n) ? s.divisors[i] : 0));
    for (int i = 0; i + 1 < n; i++) {
        if (s.divisors[i + 1] == 0) continue;
        REQUIRE(s.divisors[i] != 0);
        CHECK(s.divisors[i + 1] % s.divisors[i] == 0);
    }
}

}  // namespace

TEST_CASE("smith normal form small cases") {
    SmithResult id = smith_normal_form(IntMatrix::identity(3));
    CHECK(id.divisors == std::vector<long long>{1, 1, 1});

    SmithResult z = smith_normal_form(IntMatrix(2, 3));
    CHECK(z.divisors == std::vector<long long>{0, 0});

    SmithResult a = smith_normal_form(from_rows({{2, 4}, {6, 8}}));
    CHECK(a.divisors == std::vector<long long>{2, 4});

    check_snf(from_rows({{2, 4}, {6, 8}}));
    check_snf(from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
    check_snf(IntMatrix(3, 2));
}

TEST_CASE("smith normal form random property: unimodular transforms and chain") {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> dim(1, 6), val(-9, 9);
    for (int trial = 0; trial < 1000; trial++) {
        IntMatrix m(dim(rng), dim(rng));
        for (auto& e : m.entries) e = val(rng);
        check_snf(m);
    }
}

TEST_CASE("smith normal form invariant under permutations") {
    std::mt19937 rng(777);
    std::uniform_int_distribution<int> val(-9, 9);
    for (int trial = 0; trial < 100; trial++) {
        IntMatrix m(5, 4);
        for (auto& e : m.entries) e = val(rng);
        std::vector<int> pr{0, 1, 2, 3, 4}, pc{0, 1, 2, 3};
        std::shuffle(pr.begin(), pr.end(), rng);
        std::shuffle(pc.begin(), pc.end(), rng);
        IntMatrix p(5, 4);
        for (int i = 0; i < 5; i++)
            for (int j = 0; j < 4; j++) p.at(i, j) = m.at(pr[i], pc[j]);
        CHECK(smith_normal_form(m).divisors == smith_normal_form(p).divisors);
    }
}

TEST_CASE("determinant") {
    CHECK(determinant(IntMatrix::identity(4)) == 1);
    CHECK(determinant(from_rows({{2, 4}, {6, 8}})) == -8);
    CHECK(determinant(from_rows({{1, 2}, {2, 4}})) == 0);
    CHECK(determinant(from_rows({{0, 1}, {1, 0}})) == -1);
}

TEST_CASE("cokernel") {
    AbelianGroup g = cokernel(from_rows({{2, 0}, {0, 3}}));
    CHECK(g == AbelianGroup{0, {6}});  // Z/2 x Z/3 = Z/6
    CHECK(g.to_string() == "Z/6");

    AbelianGroup z2 = cokernel(IntMatrix(2, 1));
    CHECK(z2 == AbelianGroup{2, {}});
    CHECK(z2.to_string() == "Z^2");

    CHECK(cokernel(IntMatrix::identity(3)) == AbelianGroup{0, {}});
    CHECK(cokernel(IntMatrix::identity(3)).to_string() == "0");
}

TEST_CASE("word parsing") {
    CHECK(exponent_vector("a2b'c", 3) == std::vector<long long>{2, -1, 1});
    CHECK(exponent_vector("aBa'b3", 2) == std::vector<long long>{0, 2});
    CHECK(exponent_vector("ab = ba", 2) == std::vector<long long>{0, 0});
    CHECK(exponent_vector("a3 = b2", 2) == std::vector<long long>{3, -2});
    CHECK_THROWS(exponent_vector("a=b=c", 3));
    CHECK_THROWS(exponent_vector("a$", 1));
}

TEST_CASE("abelianization of free groups") {
    CHECK(abelianization(2, {}) == AbelianGroup{2, {}});
    CHECK(abelianization(3, {}) == AbelianGroup{3, {}});
}

TEST_CASE("abelianized fundamental groups of the twelve classes and the exotic complex") {
    struct Case {
        const char* name;
        int gens;
        std::vector<std::string> relators;
        AbelianGroup expect;
    };
    // relator words in generators s,t or u,v,w
    std::vector<Case> cases = {
        {"V0", 2, {"tst2s't = st2st2s'ts", "st's't'2s = tst2s'tsst"}, {0, {15}}},
        {"V0_1", 3, {"u = vw'v'uw", "uv = wvwuw", "uvuw = wuvu"}, {2, {3}}},
        {"V0_2", 3, {"uv = wvwuw", "wu = uvwv2", "v = uvw'uwu"}, {0, {3, 3, 3}}},
        {"V0_2x", 3, {"uv = wvwuw", "wu = vuvwv", "wu2v = vu'w"}, {0, {3, 3, 3}}},
        {"V1", 2, {"s4ts'3ts = ts2t", "t = s2ts't's2t's'2t2s2"}, {1, {3}}},
        {"V2_1", 2, {"st2 = tst2s'ts2", "ts't2 = s3ts2t'2st'sts2"}, {0, {24}}},
        {"V2_2", 2, {"s2 = t2s4t'3st", "st = t2s'2t'4s3"}, {0, {3, 3}}},
        {"V2_3", 2, {"s2t3s3t2 = t2s2", "t2 = s2t2s2t2s'2ts"}, {1, {3}}},
        {"V2_4", 2, {"s2t2sts2 = t3st", "s = t3stst's2tst"}, {0, {24}}},
        {"V3", 2, {"st3st = t2sts2", "s2 = t2sts'2ts't2st3"}, {0, {6}}},
        {"V4_1", 3, {"v2 = u2", "w2uw = uwu2", "w2vuwvu3wu2"}, {0, {2, 2, 12}}},
        {"V4_2", 2, {"t2st3ststs2", "t2s'2t's't2 = s3ts2"}, {0, {66}}},
        {"Vbar", 2, {"s2t = t2s2t2s't'st's", "t = sts'ts't2s't'2st's"}, {1, {}}},
    };
    for (const auto& c : cases) {
        CAPTURE(c.name);
        CHECK(abelianization(c.gens, c.relators) == c.expect);
    }
}
