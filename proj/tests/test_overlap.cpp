#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eqd/overlap.hpp"

#include <cmath>
#include <random>

using namespace eqd;

namespace {

std::vector<BigInt> big(std::vector<long> v) { return {v.begin(), v.end()}; }

SurdSum rat(long v) { return SurdSum(Rat(v)); }
SurdSum root(long coeff, std::int64_t rad) { return SurdSum(Surd(Rat(coeff), rad)); }

std::vector<SurdSum> surd_support(std::initializer_list<SurdSum> vals) { return vals; }

// Lattice of the full image of the embedded squared-difference map.
RatMatrix image_H_X(const std::vector<SurdSum>& support, int n, const SpanEmbedding& emb,
                    bool embedded_star) {
    const int m = pair_count(n);
    RatMatrix img(0, (embedded_star ? m - 1 : m) * emb.ell);
    std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
    std::vector<SurdSum> xs(static_cast<std::size_t>(n));
    for (;;) {
        for (int i = 0; i < n; ++i) xs[std::size_t(i)] = support[idx[std::size_t(i)]];
        img.append_row(embedded_star ? embedded_squared_diff(xs, emb)
                                     : squared_diff_embedded(xs, emb));
        int pos = n - 1;
        while (pos >= 0 && ++idx[std::size_t(pos)] == support.size()) {
            idx[std::size_t(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    return img;
}

}  // namespace

TEST_CASE("pair flattening is lexicographic") {
    CHECK(pair_flat(1, 2, 4) == 0);
    CHECK(pair_flat(1, 3, 4) == 1);
    CHECK(pair_flat(1, 4, 4) == 2);
    CHECK(pair_flat(2, 3, 4) == 3);
    CHECK(pair_flat(3, 4, 4) == 5);
    auto pairs = all_pairs(5);
    for (std::size_t p = 0; p < pairs.size(); ++p)
        CHECK(pair_flat(pairs[p].i, pairs[p].j, 5) == static_cast<int>(p));
    CHECK_THROWS_AS(pair_flat(2, 2, 4), std::invalid_argument);
}

TEST_CASE("overlap vector examples") {
    CHECK(overlap_vector(0u, 4) == big({0, 0, 0, 0, 0, 0}));
    CHECK(overlap_vector(0b1111u, 4) == big({0, 0, 0, 0, 0, 0}));
    CHECK(overlap_vector(0b001u, 3) == big({1, 1, 0}));
    // H({1,2}) = H({1}) + H({2}) - 2 e_{1,2}
    auto h12 = overlap_vector(0b011u, 3);
    CHECK(h12 == big({0, 1, 1}));
    auto h1 = overlap_vector(0b001u, 3), h2 = overlap_vector(0b010u, 3);
    for (int p = 0; p < 3; ++p)
        CHECK(h12[std::size_t(p)] == h1[std::size_t(p)] + h2[std::size_t(p)] - (p == 0 ? 2 : 0));
}

TEST_CASE("inclusion-exclusion identity") {
    // singletons: 2 e_{i,j}
    auto v = inclusion_exclusion_check(0b00001u, 0b00100u, 5);  // A={1}, B={3}
    std::vector<BigInt> want(static_cast<std::size_t>(pair_count(5)));
    want[static_cast<std::size_t>(pair_flat(1, 3, 5))] = 2;
    CHECK(v == want);

    CHECK(inclusion_exclusion_check(0u, 0b0110u, 4) ==
          std::vector<BigInt>(static_cast<std::size_t>(pair_count(4))));

    auto w = inclusion_exclusion_check(0b0001u, 0b0110u, 4);  // A={1}, B={2,3}
    std::vector<BigInt> want2(static_cast<std::size_t>(pair_count(4)));
    want2[static_cast<std::size_t>(pair_flat(1, 2, 4))] = 2;
    want2[static_cast<std::size_t>(pair_flat(1, 3, 4))] = 2;
    CHECK(w == want2);

    CHECK_THROWS_AS(inclusion_exclusion_check(0b011u, 0b010u, 3), std::invalid_argument);
}

TEST_CASE("interval identity over all i < j <= n <= 12") {
    for (int n = 3; n <= 12; ++n) {
        const int m = pair_count(n);
        for (int i = 1; i < n; ++i)
            for (int j = i + 1; j <= n; ++j) {
                std::uint32_t mid = ((1u << j) - 1u) & ~((1u << i) - 1u);  // [i+1:j]
                auto lhs = overlap_vector(mid, n);
                auto hj = overlap_vector((1u << j) - 1u, n);
                auto hi = overlap_vector((1u << i) - 1u, n);
                std::vector<BigInt> rhs(static_cast<std::size_t>(m));
                for (int p = 0; p < m; ++p) rhs[std::size_t(p)] = hj[std::size_t(p)] - hi[std::size_t(p)];
                for (int k = 1; k <= i; ++k)
                    for (int l = i + 1; l <= j; ++l)
                        rhs[static_cast<std::size_t>(pair_flat(k, l, n))] += 2;
                CHECK(lhs == rhs);
            }
    }
}

TEST_CASE("doubled-unit expansion toward the last vertex") {
    // 2 e_{i,n} = 2 H[1:i] - 2 H[1:i-1] - sum_{k>i,k<n} 2 e_{i,k} + sum_{k<i} 2 e_{k,i}
    for (int n = 3; n <= 12; ++n) {
        const int m = pair_count(n);
        for (int i = 1; i < n; ++i) {
            std::vector<BigInt> rhs(static_cast<std::size_t>(m));
            auto hi = overlap_vector((1u << i) - 1u, n);
            auto hprev = overlap_vector(i >= 1 ? (1u << (i - 1)) - 1u : 0u, n);
            for (int p = 0; p < m; ++p)
                rhs[std::size_t(p)] = 2 * hi[std::size_t(p)] - 2 * hprev[std::size_t(p)];
            for (int k = i + 1; k < n; ++k)
                rhs[static_cast<std::size_t>(pair_flat(i, k, n))] -= 2;
            for (int k = 1; k < i; ++k)
                rhs[static_cast<std::size_t>(pair_flat(k, i, n))] += 2;
            std::vector<BigInt> lhs(static_cast<std::size_t>(m));
            lhs[static_cast<std::size_t>(pair_flat(i, n, n))] = 2;
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("basis of the overlap lattice, n = 3") {
    IntMatrix b = basis_lat_H(3);
    CHECK(b.rows() == 3);
    CHECK(b.row(0) == big({1, 1, 0}));
    CHECK(b.row(1) == big({0, 1, 1}));
    CHECK(b.row(2) == big({2, 0, 0}));
    CHECK(fundamental_volume_int(b) == 2);
}

TEST_CASE("overlap lattice basis matches the full image for n = 3..12") {
    for (int n = 3; n <= 12; ++n) {
        IntMatrix img = image_H(n);
        CHECK(lattice_equal(img, basis_lat_H(n)));
        // Any doubled unit can be swapped for the all-twos vector.
        CHECK(lattice_equal(img, basis_lat_H(n, pair_flat(1, 2, n))));
        if (n >= 4) CHECK(lattice_equal(img, basis_lat_H(n, pair_flat(2, 3, n))));
    }
}

TEST_CASE("embedded lattice basis and volumes 2^(m-n)") {
    CHECK(basis_lat_V_binary(3).volume == Rat(1));
    CHECK(basis_lat_V_binary(4).volume == Rat(4));
    CHECK(basis_lat_V_binary(5).volume == Rat(32));
    for (int n = 3; n <= 10; ++n) {
        LatticeDescription lat = basis_lat_V_binary(n);
        const int m = pair_count(n);
        CHECK(lat.rank == m - 1);
        CHECK(lat.volume == rat_pow(Rat(2), m - n));
        IntMatrix img = image_H_star(n);
        CHECK(lattice_equal(img, lat.basis));
        CHECK(fundamental_volume_int(img) == int_pow(BigInt(2), static_cast<unsigned long>(m - n)));
    }
}

TEST_CASE("squared-difference map examples") {
    SUBCASE("equal entries give zero") {
        auto v = squared_diff_vector({root(1, 2), root(1, 2), root(1, 2)});
        for (const auto& s : v) CHECK(s.is_zero());
    }
    SUBCASE("rational entries") {
        auto v = squared_diff_vector({rat(1), rat(0), rat(0)});
        CHECK(v[0].as_rational() == 1);
        CHECK(v[1].as_rational() == 1);
        CHECK(v[2].as_rational() == 0);
    }
    SUBCASE("surd entries over the basis (1, sqrt2, sqrt3, sqrt6)") {
        std::vector<SurdSum> sup = {rat(0), rat(1), root(1, 2), root(1, 3)};
        SpanEmbedding emb = make_span_embedding(sup);
        CHECK(emb.ell == 4);
        CHECK(emb.ambient.radicands() == std::vector<std::int64_t>{1, 2, 3, 6});
        auto flat = squared_diff_embedded({root(1, 2), rat(0), rat(1)}, emb);
        // (sqrt2 - 0)^2 = 2; (sqrt2 - 1)^2 = 3 - 2 sqrt2; (0 - 1)^2 = 1
        std::vector<Rat> want = {Rat(2), Rat(0),  Rat(0), Rat(0), Rat(3), Rat(-2),
                                 Rat(0), Rat(0),  Rat(1), Rat(0), Rat(0), Rat(0)};
        CHECK(flat == want);
    }
}

TEST_CASE("tensor basis spans the image lattice") {
    SUBCASE("binary support reduces to the overlap basis") {
        std::vector<SurdSum> sup = {rat(0), rat(1)};
        SpanEmbedding emb = make_span_embedding(sup);
        CHECK(emb.ell == 1);
        ProductSets ps = product_sets(sup);
        CHECK(ps.x1 == std::vector<SurdSum>{rat(2)});
        CHECK(ps.x2 == std::vector<SurdSum>{rat(1), rat(2)});
        RatMatrix tensor = basis_lat_H_X(sup, 4, emb);
        CHECK(make_lattice(tensor).same_lattice(make_lattice(RatMatrix::from_int(basis_lat_H(4)))));
        CHECK(make_lattice(tensor).same_lattice(make_lattice(image_H_X(sup, 4, emb, false))));
    }
    SUBCASE("support {0,1,2}") {
        std::vector<SurdSum> sup = {rat(0), rat(1), rat(2)};
        SpanEmbedding emb = make_span_embedding(sup);
        ProductSets ps = product_sets(sup);
        CHECK(ps.x1 == std::vector<SurdSum>{rat(2), rat(4), rat(8)});
        RatMatrix tensor = basis_lat_H_X(sup, 3, emb);
        CHECK(make_lattice(tensor).same_lattice(make_lattice(image_H_X(sup, 3, emb, false))));
    }
    SUBCASE("support {0,1,sqrt2,sqrt3}") {
        std::vector<SurdSum> sup = {rat(0), rat(1), root(1, 2), root(1, 3)};
        SpanEmbedding emb = make_span_embedding(sup);
        CHECK(emb.ell == 4);
        RatMatrix tensor = basis_lat_H_X(sup, 3, emb);
        CHECK(make_lattice(tensor).same_lattice(make_lattice(image_H_X(sup, 3, emb, false))));
    }
    SUBCASE("embedded tensor basis spans the embedded image") {
        for (auto sup : {surd_support({rat(0), rat(1)}),
                         surd_support({rat(0), rat(1), rat(2)}),
                         surd_support({rat(0), rat(1), root(1, 2), root(1, 3)})}) {
            SpanEmbedding emb = make_span_embedding(sup);
            for (int n = 3; n <= (emb.ell > 1 ? 3 : 5); ++n) {
                LatticeDescription basis = make_lattice(basis_lat_V_X(sup, n, emb));
                GeneralVolume gv = volume_lat_V_general(sup, n, emb);
                CHECK(basis.volume == gv.volume);
                LatticeDescription image = make_lattice(image_H_X(sup, n, emb, true));
                CHECK(basis.same_lattice(image));
                // every image vector is a member
                std::vector<SurdSum> xs = {sup[0], sup.back(), sup[0]};
                xs.resize(static_cast<std::size_t>(n), sup.back());
                CHECK(lattice_contains(basis, embedded_squared_diff(xs, emb)));
            }
        }
    }
}

TEST_CASE("general increment-lattice volumes") {
    SUBCASE("binary n = 3 has volume 1") {
        std::vector<SurdSum> sup = {rat(0), rat(1)};
        SpanEmbedding emb = make_span_embedding(sup);
        GeneralVolume gv = volume_lat_V_general(sup, 3, emb);
        CHECK(gv.lat_x1 == Rat(2));
        CHECK(gv.lat_x2 == Rat(1));
        CHECK(gv.volume == Rat(1));
    }
    SUBCASE("integer supports with gcd 1 give 2^(m-n)") {
        for (auto sup : {surd_support({rat(0), rat(1), rat(3)}),
                         surd_support({rat(0), rat(1), rat(2)})}) {
            SpanEmbedding emb = make_span_embedding(sup);
            for (int n = 3; n <= 6; ++n) {
                GeneralVolume gv = volume_lat_V_general(sup, n, emb);
                CHECK(gv.volume == rat_pow(Rat(2), pair_count(n) - n));
            }
        }
    }
    SUBCASE("random integer supports of size <= 4, image volume matches") {
        std::mt19937 rng(61);
        std::uniform_int_distribution<long> val(0, 9);
        int done = 0;
        while (done < 8) {
            std::vector<SurdSum> sup = {rat(0)};
            int extra = 1 + static_cast<int>(rng() % 3);
            for (int i = 0; i < extra; ++i) sup.push_back(rat(val(rng)));
            std::sort(sup.begin(), sup.end());
            sup.erase(std::unique(sup.begin(), sup.end()), sup.end());
            if (sup.size() < 2) continue;
            // normalize gcd to 1
            BigInt g = 0;
            for (const auto& x : sup) g = big_gcd(g, BigInt(x.as_rational().get_num()));
            std::vector<SurdSum> norm;
            for (const auto& x : sup) norm.push_back(SurdSum(x.as_rational() / Rat(g)));
            SpanEmbedding emb = make_span_embedding(norm);
            for (int n = 3; n <= (norm.size() > 3 ? 5 : 8); ++n) {
                GeneralVolume gv = volume_lat_V_general(norm, n, emb);
                CHECK(gv.volume == rat_pow(Rat(2), pair_count(n) - n));
                double configs = std::pow(static_cast<double>(norm.size()), n);
                if (configs <= 4096) {
                    RatMatrix img = image_H_X(norm, n, emb, true);
                    CHECK(fundamental_volume(img) == gv.volume);
                }
            }
            ++done;
        }
    }
    SUBCASE("surd support {0,1,sqrt2,sqrt3}") {
        std::vector<SurdSum> sup = {rat(0), rat(1), root(1, 2), root(1, 3)};
        SpanEmbedding emb = make_span_embedding(sup);
        GeneralVolume gv = volume_lat_V_general(sup, 3, emb);
        CHECK(gv.lat_x1 == Rat(16));
        CHECK(gv.lat_x2 == Rat(8));
        CHECK(gv.lat_x1 == 2 * gv.lat_x2);
        CHECK(gv.volume == Rat(64));  // (lat_x2)^(n-1) at n = 3, m - n = 0
        // Against the exhaustive image lattice.
        RatMatrix img = image_H_X(sup, 3, emb, true);
        CHECK(fundamental_volume(img) == gv.volume);
    }
}

TEST_CASE("volume is invariant under pair-coordinate permutations") {
    std::vector<SurdSum> sup = {rat(0), rat(1), rat(3)};
    SpanEmbedding emb = make_span_embedding(sup);
    const int n = 4;
    RatMatrix img = image_H_X(sup, n, emb, true);
    Rat vol = fundamental_volume(img);
    std::mt19937 rng(23);
    for (int it = 0; it < 5; ++it) {
        std::vector<int> perm(static_cast<std::size_t>(img.cols()));
        for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
        std::shuffle(perm.begin(), perm.end(), rng);
        RatMatrix shuffled(img.rows(), img.cols());
        for (int r = 0; r < img.rows(); ++r)
            for (int c = 0; c < img.cols(); ++c)
                shuffled.at(r, c) = img.at(r, perm[std::size_t(c)]);
        CHECK(fundamental_volume(shuffled) == vol);
    }
}

TEST_CASE("mod-2 rank route to the volume ratio") {
    SUBCASE("integer support with gcd 1") {
        auto res = volume_ratio_z2({rat(0), rat(1), rat(2)});
        REQUIRE(res.hypothesis_met);
        CHECK(res.ell == 1);
        CHECK(res.r == 0);
        CHECK(res.ratio == Rat(2));
    }
    SUBCASE("square-root supports always give ratio 2") {
        std::vector<std::vector<SurdSum>> supports = {
            {rat(0), rat(1), root(1, 2)},
            {rat(0), root(1, 2), root(1, 3)},
            {rat(0), rat(1), root(1, 2), root(1, 3)},
            {rat(0), root(2, 2), root(3, 5)},
            {rat(0), root(1, 6), rat(5), root(2, 3)},
        };
        for (const auto& sup : supports) {
            auto res = volume_ratio_z2(sup);
            REQUIRE(res.hypothesis_met);
            CHECK(res.ratio == Rat(2));
            SpanEmbedding emb = make_span_embedding(sup);
            GeneralVolume gv = volume_lat_V_general(sup, 3, emb);
            CHECK(gv.lat_x1 / gv.lat_x2 == res.ratio);
        }
    }
    SUBCASE("agreement with direct SNF ratios on random surd supports") {
        std::mt19937 rng(31);
        std::uniform_int_distribution<int> coeff(1, 3);
        std::vector<std::int64_t> rads = {1, 2, 3, 5, 6};
        for (int it = 0; it < 30; ++it) {
            std::vector<SurdSum> sup = {rat(0)};
            int sz = 2 + static_cast<int>(rng() % 3);
            for (int i = 0; i < sz; ++i)
                sup.push_back(root(coeff(rng), rads[rng() % rads.size()]));
            std::sort(sup.begin(), sup.end());
            sup.erase(std::unique(sup.begin(), sup.end()), sup.end());
            if (sup.size() < 2) continue;
            auto res = volume_ratio_z2(sup);
            if (!res.hypothesis_met) continue;
            SpanEmbedding emb = make_span_embedding(sup);
            GeneralVolume gv = volume_lat_V_general(sup, 3, emb);
            CHECK(gv.lat_x1 / gv.lat_x2 == res.ratio);
        }
    }
    SUBCASE("rank-deficient case reports hypothesis-not-met") {
        // {0, 1+sqrt2, 1-sqrt2}: the squares 3 +/- 2 sqrt2 coincide mod 2.
        SurdSum a = rat(1) + root(1, 2), b = rat(1) - root(1, 2);
        auto res = volume_ratio_z2({rat(0), a, b});
        CHECK_FALSE(res.hypothesis_met);
        CHECK(res.ell == 2);
        // The direct SNF route still works.
        SpanEmbedding emb = make_span_embedding({rat(0), a, b});
        GeneralVolume gv = volume_lat_V_general({rat(0), a, b}, 3, emb);
        CHECK(gv.lat_x1 > 0);
        CHECK(gv.lat_x2 > 0);
    }
}
