#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eqd/mc.hpp"
#include "eqd/oracle.hpp"
#include "eqd/table.hpp"

using namespace eqd;

namespace {

SurdSum rat(long v) { return SurdSum(Rat(v)); }
SurdSum root(long c, std::int64_t t) { return SurdSum(Surd(Rat(c), t)); }

DistributionSpec bernoulli_half() { return DistributionSpec::uniform({rat(0), rat(1)}); }

DistributionSpec surd4() {
    return DistributionSpec::uniform({rat(0), rat(1), root(1, 2), root(1, 3)});
}

// Independent count of zero-sum atom combinations for the binary n = 3 law
// (atoms (0,0), (1,1), (-1,0), (0,-1) each with weight 1 of 4): the sum is
// zero iff the latter three appear equally often.
Rat ternary_multinomial_p(long d) {
    BigInt total = 0;
    for (long b = 0; 3 * b <= d; ++b) {
        BigInt ways;
        mpz_bin_uiui(ways.get_mpz_t(), static_cast<unsigned long>(d),
                     static_cast<unsigned long>(3 * b));
        BigInt multi;  // (3b)! / (b!)^3
        mpz_fac_ui(multi.get_mpz_t(), static_cast<unsigned long>(3 * b));
        BigInt bf;
        mpz_fac_ui(bf.get_mpz_t(), static_cast<unsigned long>(b));
        multi /= bf * bf * bf;
        total += ways * multi;
    }
    Rat p = Rat(total) / Rat(int_pow(BigInt(4), static_cast<unsigned long>(d)));
    p.canonicalize();
    return p;
}

}  // namespace

TEST_CASE("column law of the binary n = 3 case") {
    ColumnLaw law = column_law(bernoulli_half(), 3);
    CHECK(law.dim == 2);
    REQUIRE(law.atoms.size() == 4);
    CHECK(law.denom == 8);
    // atoms (sorted): (-1,0), (0,-1), (0,0), (1,1), each 1/4
    using P = std::vector<std::int32_t>;
    CHECK(law.atoms[0].first == P{-1, 0});
    CHECK(law.atoms[1].first == P{0, -1});
    CHECK(law.atoms[2].first == P{0, 0});
    CHECK(law.atoms[3].first == P{1, 1});
    for (const auto& [pt, w] : law.atoms) CHECK(Rat(w) / Rat(law.denom) == Rat(1, 4));
}

TEST_CASE("column law mass and zero atom") {
    for (auto d : {bernoulli_half(), DistributionSpec::uniform({rat(0), rat(1), rat(3)}), surd4()}) {
        ColumnLaw law = column_law(d, 3);
        BigInt mass = 0;
        bool zero_atom = false;
        for (const auto& [pt, w] : law.atoms) {
            mass += w;
            bool all0 = true;
            for (auto x : pt) all0 = all0 && x == 0;
            if (all0) zero_atom = w > 0;
        }
        CHECK(mass == law.denom);
        CHECK(zero_atom);
    }
}

TEST_CASE("column law of a degenerate support") {
    ColumnLaw law = column_law(DistributionSpec::uniform({rat(5)}), 3);
    REQUIRE(law.atoms.size() == 1);
    CHECK(law.atoms[0].first == std::vector<std::int32_t>{0, 0});
    CHECK(law.denom == 1);
    CHECK(exact_p_d(law, 12) == Rat(1));
}

TEST_CASE("exact DP ground truth for binary n = 3") {
    ColumnLaw law = column_law(bernoulli_half(), 3);
    CHECK(exact_p_d(law, 0) == Rat(1));
    CHECK(exact_p_d(law, 1) == Rat(1, 4));
    CHECK(exact_p_d(law, 2) == Rat(1, 16));
    CHECK(exact_p_d(law, 3) == Rat(7, 64));
}

TEST_CASE("exact DP equals the independent combinatorial count") {
    ColumnLaw law = column_law(bernoulli_half(), 3);
    for (long d = 1; d <= 12; ++d) CHECK(exact_p_d(law, d) == ternary_multinomial_p(d));
    CHECK(exact_p_d(law, 50) == ternary_multinomial_p(50));
    // past the 128-bit counter range: exercises the big-integer path
    CHECK(exact_p_d(law, 70) == ternary_multinomial_p(70));
}

TEST_CASE("brute force equals exact DP wherever both run") {
    SUBCASE("binary") {
        for (int n : {3, 4}) {
            ColumnLaw law = column_law(bernoulli_half(), n);
            for (long d = 0; d <= (n == 3 ? 4 : 2); ++d)
                CHECK(brute_p_d(bernoulli_half(), n, d) == exact_p_d(law, d));
        }
    }
    SUBCASE("three-point integer support with weights") {
        DistributionSpec d;
        d.support = {rat(0), rat(1), rat(3)};
        d.probs = {Rat(1, 2), Rat(1, 4), Rat(1, 4)};
        ColumnLaw law = column_law(d, 3);
        for (long dd = 1; dd <= 2; ++dd) CHECK(brute_p_d(d, 3, dd) == exact_p_d(law, dd));
    }
    SUBCASE("surd support") {
        ColumnLaw law = column_law(surd4(), 3);
        CHECK(brute_p_d(surd4(), 3, 1) == Rat(1, 16));
        CHECK(exact_p_d(law, 1) == Rat(1, 16));
        CHECK(brute_p_d(surd4(), 3, 2) == exact_p_d(law, 2));
    }
}

TEST_CASE("the event is invariant under affine support maps") {
    ColumnLaw base = column_law(bernoulli_half(), 3);
    for (auto sup : {std::vector<SurdSum>{rat(5), rat(7)}, std::vector<SurdSum>{rat(1), rat(3)},
                     std::vector<SurdSum>{rat(-2), rat(2)}}) {
        ColumnLaw law = column_law(DistributionSpec::uniform(sup), 3);
        for (long d = 1; d <= 6; ++d) CHECK(exact_p_d(law, d) == exact_p_d(base, d));
    }
}

TEST_CASE("DP mass conservation") {
    for (auto dist : {bernoulli_half(), DistributionSpec::uniform({rat(0), rat(1), rat(2)})}) {
        ColumnLaw law = column_law(dist, 3);
        for (long d : {1L, 3L, 7L}) {
            DPRun run = exact_p_d_run(law, d);
            CHECK(run.final_mass == int_pow(law.denom, static_cast<unsigned long>(d)));
        }
    }
}

TEST_CASE("float DP tracks the exact values and is reproducible") {
    ColumnLaw law = column_law(bernoulli_half(), 4);
    for (long d : {1L, 4L, 8L}) {
        double fp = float_p_d_run(law, d).p;
        double ep = rat_to_double(exact_p_d(law, d));
        CHECK(fp == doctest::Approx(ep).epsilon(1e-12));
    }
    FloatDPRun a = float_p_d_run(law, 9);
    FloatDPRun b = float_p_d_run(law, 9);
    CHECK(a.p == b.p);  // bitwise: fixed accumulation order
}

TEST_CASE("budget refusals") {
    ColumnLaw law = column_law(bernoulli_half(), 4);
    CHECK_THROWS_AS(exact_p_d(law, 8, DPLimits{10}), BudgetExceeded);
    // dimension cap: m - 1 = 20 at n = 7
    ColumnLaw big = column_law(bernoulli_half(), 7);
    CHECK(big.dim == 20);
    CHECK_THROWS_AS(exact_p_d(big, 2), BudgetExceeded);
    CHECK_THROWS_AS(brute_p_d(bernoulli_half(), 3, 40), BudgetExceeded);
    // coordinate range cap
    ColumnLaw law3 = column_law(bernoulli_half(), 3);
    CHECK_THROWS_AS(exact_p_d(law3, 100000), BudgetExceeded);
}

TEST_CASE("method selection for the convergence table") {
    DistributionSpec d = bernoulli_half();
    ColumnLaw law = column_law(d, 3);
    TableLimits lim;
    CHECK(choose_method(d, law, 3, 2, lim) == Method::Brute);
    CHECK(choose_method(d, law, 3, 300, lim) == Method::ExactDP);
    ColumnLaw law6 = column_law(d, 6);  // dim 14
    CHECK(choose_method(d, law6, 6, 40, lim) == Method::MonteCarlo);
}

TEST_CASE("convergence table rows") {
    TableLimits lim;
    lim.mc_samples = 10000;
    ConvergenceTable tab = convergence_table(bernoulli_half(), 3, {1, 2, 3, 20}, lim);
    REQUIRE(tab.rows.size() == 4);
    CHECK(tab.rows[0].p_exact == "1/4");
    CHECK(tab.rows[1].p_exact == "1/16");
    CHECK(tab.rows[2].p_exact == "7/64");
    CHECK(tab.rows[3].method == Method::ExactDP);
    for (const auto& r : tab.rows) CHECK(r.ratio > 0);
    CHECK_THROWS_AS(convergence_table(DistributionSpec::uniform({rat(1)}), 3, {1}, lim),
                    std::invalid_argument);
}

TEST_CASE("monte carlo determinism and accuracy") {
    DistributionSpec d = bernoulli_half();
    SUBCASE("same seed, same result, any worker count") {
        MCResult a = mc_estimate(d, 3, 13, 200000, 99, 1);
        MCResult b = mc_estimate(d, 3, 13, 200000, 99, 2);
        MCResult c = mc_estimate(d, 3, 13, 200000, 99, 3);
        CHECK(a.hits == b.hits);
        CHECK(a.hits == c.hits);
        CHECK(a.estimate == b.estimate);
        MCResult again = mc_estimate(d, 3, 13, 200000, 99, 2);
        CHECK(a.hits == again.hits);
    }
    SUBCASE("estimate within 4 standard errors of the exact value") {
        long dd = 10;
        Rat exact = exact_p_d(column_law(d, 3), dd);
        MCResult r = mc_estimate(d, 3, dd, 400000, 2024, 2);
        CHECK(std::abs(r.estimate - rat_to_double(exact)) <= 4 * r.std_error);
    }
    SUBCASE("d = 0 is always a hit") {
        MCResult r = mc_estimate(d, 3, 0, 1000, 5);
        CHECK(r.hits == 1000);
        CHECK(r.estimate == 1.0);
    }
    SUBCASE("surd support sampling stays exact") {
        long dd = 2;
        Rat exact = exact_p_d(column_law(surd4(), 3), dd);
        MCResult r = mc_estimate(surd4(), 3, dd, 400000, 7, 2);
        CHECK(r.kernel == "scalar");  // ell = 4 stays on the reference kernel
        CHECK(std::abs(r.estimate - rat_to_double(exact)) <= 4 * r.std_error);
    }
}
