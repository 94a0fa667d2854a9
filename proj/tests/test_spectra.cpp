#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eqd/linegraph.hpp"
#include "eqd/overlap.hpp"

using namespace eqd;

namespace {

std::vector<Rat> to_rat(const std::vector<BigInt>& v) {
    std::vector<Rat> out;
    for (const auto& x : v) out.emplace_back(x);
    return out;
}

}  // namespace

TEST_CASE("adjacency basics") {
    IntMatrix a3 = linegraph_adjacency(3);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) CHECK(a3.at(r, c) == (r == c ? 0 : 1));

    for (int n = 3; n <= 12; ++n) {
        IntMatrix a = linegraph_adjacency(n);
        const int m = pair_count(n);
        for (int r = 0; r < m; ++r) {
            BigInt sum = 0;
            for (int c = 0; c < m; ++c) {
                CHECK(a.at(r, c) == a.at(c, r));
                sum += a.at(r, c);
            }
            CHECK(sum == 2 * n - 4);
            CHECK(a.at(r, r) == 0);
        }
    }
}

TEST_CASE("adjacency columns are overlap images of pairs") {
    for (int n : {3, 4, 5, 7}) {
        IntMatrix a = linegraph_adjacency(n);
        auto pairs = all_pairs(n);
        for (std::size_t p = 0; p < pairs.size(); ++p) {
            std::uint32_t mask = (1u << (pairs[p].i - 1)) | (1u << (pairs[p].j - 1));
            auto h = overlap_vector(mask, n);
            for (int q = 0; q < a.rows(); ++q) CHECK(a.at(q, static_cast<int>(p)) == h[std::size_t(q)]);
        }
    }
}

TEST_CASE("eigen structure multiplicities") {
    auto c4 = eigen_structure(4);
    REQUIRE(c4.size() == 3);
    CHECK(c4[0].eigenvalue == 4);
    CHECK(c4[0].multiplicity == 1);
    CHECK(c4[1].eigenvalue == 0);
    CHECK(c4[1].multiplicity == 3);
    CHECK(c4[2].eigenvalue == -2);
    CHECK(c4[2].multiplicity == 2);

    auto c3 = eigen_structure(3);
    CHECK(c3[0].eigenvalue == 2);
    CHECK(c3[1].eigenvalue == -1);
    CHECK(c3[1].multiplicity == 2);
    CHECK(c3[2].multiplicity == 0);  // no (-2) component at n = 3

    auto c5 = eigen_structure(5);
    CHECK(c5[0].eigenvalue == 6);
    CHECK(c5[1].eigenvalue == 1);
    CHECK(c5[1].multiplicity == 4);
    CHECK(c5[2].eigenvalue == -2);
    CHECK(c5[2].multiplicity == 5);
}

TEST_CASE("exact eigen equations and dimension count for n = 3..12") {
    for (int n = 3; n <= 12; ++n) {
        auto comps = eigen_structure(n);
        int total = 0;
        for (const auto& c : comps) {
            CHECK(c.verified);
            CHECK(c.basis.rows() == c.multiplicity);
            total += c.multiplicity;
        }
        CHECK(total == pair_count(n));
    }
}

TEST_CASE("incidence factorizations") {
    for (int n = 3; n <= 12; ++n) {
        const int m = pair_count(n);
        IntMatrix inc = incidence_matrix(n);
        IntMatrix adj = linegraph_adjacency(n);
        // M M^t = J + (n-2) I (vertex side)
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                BigInt s = 0;
                for (int e = 0; e < m; ++e) s += inc.at(r, e) * inc.at(c, e);
                CHECK(s == BigInt(1) + (r == c ? n - 2 : 0));
            }
        // M^t M = adjacency + 2 I (pair side)
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < m; ++c) {
                BigInt s = 0;
                for (int v = 0; v < n; ++v) s += inc.at(v, r) * inc.at(v, c);
                CHECK(s == adj.at(r, c) + (r == c ? 2 : 0));
            }
    }
}

TEST_CASE("adjacency action on single-vertex overlap vectors") {
    // adj * H_i = 2 * ones + (n-4) * H_i
    for (int n = 3; n <= 12; ++n) {
        RatMatrix a = RatMatrix::from_int(linegraph_adjacency(n));
        for (int i = 1; i <= n; ++i) {
            auto hi = to_rat(overlap_vector(1u << (i - 1), n));
            auto lhs = mat_vec(a, hi);
            for (int p = 0; p < pair_count(n); ++p)
                CHECK(lhs[std::size_t(p)] == Rat(2) + Rat(n - 4) * hi[std::size_t(p)]);
        }
    }
}

TEST_CASE("gram identities of the overlap vectors") {
    for (int n = 3; n <= 12; ++n) {
        std::vector<std::vector<Rat>> h;
        for (int i = 1; i <= n; ++i) h.push_back(to_rat(overlap_vector(1u << (i - 1), n)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                CHECK(dot(h[std::size_t(i)], h[std::size_t(j)]) == Rat(1) + (i == j ? n - 2 : 0));
    }
}

TEST_CASE("even cycle vectors") {
    SUBCASE("explicit 4-cycle") {
        auto v = even_cycle_vector({1, 2, 3, 4}, 4);
        std::vector<BigInt> want(6);
        want[std::size_t(pair_flat(1, 2, 4))] = 1;
        want[std::size_t(pair_flat(2, 3, 4))] = -1;
        want[std::size_t(pair_flat(3, 4, 4))] = 1;
        want[std::size_t(pair_flat(1, 4, 4))] = -1;
        CHECK(v == want);
    }
    SUBCASE("reversal from the same start vertex negates") {
        auto v = even_cycle_vector({1, 2, 3, 4}, 5);
        auto w = even_cycle_vector({1, 4, 3, 2}, 5);
        for (std::size_t p = 0; p < v.size(); ++p) CHECK(v[p] == -w[p]);
        // reversal plus an odd rotation cancels the sign flip
        auto u = even_cycle_vector({4, 3, 2, 1}, 5);
        CHECK(u == v);
    }
    SUBCASE("odd length rejected") {
        CHECK_THROWS_AS(even_cycle_vector({1, 2, 3}, 4), std::invalid_argument);
        CHECK_THROWS_AS(even_cycle_vector({1, 1, 2, 3}, 4), std::invalid_argument);
    }
    SUBCASE("two independent 4-cycles at n = 4") {
        RatMatrix b(0, 6);
        for (auto cyc : {std::vector<int>{1, 2, 3, 4}, std::vector<int>{1, 3, 2, 4}})
            b.append_row(to_rat(even_cycle_vector(cyc, 4)));
        CHECK(rank_rat(b) == 2);
        RatMatrix a = RatMatrix::from_int(linegraph_adjacency(4));
        for (int r = 0; r < 2; ++r) {
            auto av = mat_vec(a, b.row(r));
            for (int p = 0; p < 6; ++p) CHECK(av[std::size_t(p)] == Rat(-2) * b.at(r, p));
        }
    }
}

TEST_CASE("even cycle basis spans the (-2) eigenspace") {
    for (int n = 4; n <= 10; ++n) {
        const int m = pair_count(n);
        RatMatrix b = even_cycle_basis(n);
        CHECK(b.rows() == m - n);
        CHECK(rank_rat(b) == m - n);
        RatMatrix a = RatMatrix::from_int(linegraph_adjacency(n));
        std::vector<Rat> ones(static_cast<std::size_t>(m), Rat(1));
        for (int r = 0; r < b.rows(); ++r) {
            auto v = b.row(r);
            auto av = mat_vec(a, v);
            for (int p = 0; p < m; ++p) CHECK(av[std::size_t(p)] == Rat(-2) * v[std::size_t(p)]);
            CHECK(dot(v, ones) == 0);
            for (int i = 1; i <= n; ++i)
                CHECK(dot(v, to_rat(overlap_vector(1u << (i - 1), n))) == 0);
        }
    }
}

TEST_CASE("variant basis pinned at the (1,2)-free complement") {
    for (int n = 4; n <= 9; ++n) {
        const int m = pair_count(n);
        RatMatrix b = even_cycle_basis_e12(n);
        CHECK(b.rows() == m - n);
        CHECK(rank_rat(b) == m - n);
        // First vector is the alternating 4-cycle on (1,2,3,4).
        auto v0 = even_cycle_vector({1, 2, 3, 4}, n);
        for (int p = 0; p < m; ++p) CHECK(b.at(0, p) == Rat(v0[std::size_t(p)]));
        // The rest vanish on the (1,2) coordinate.
        for (int r = 1; r < b.rows(); ++r) CHECK(b.at(r, pair_flat(1, 2, n)) == 0);
        // All still eigenvectors.
        RatMatrix a = RatMatrix::from_int(linegraph_adjacency(n));
        for (int r = 0; r < b.rows(); ++r) {
            auto av = mat_vec(a, b.row(r));
            for (int p = 0; p < m; ++p) CHECK(av[std::size_t(p)] == Rat(-2) * b.at(r, p));
        }
    }
}
