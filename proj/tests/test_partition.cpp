#include <doctest.h>

#include "haarpencil/partition.hpp"
#include "oracles.hpp"

using namespace haarpencil;

namespace {
Partition P(std::vector<int> parts) { return Partition(std::move(parts)); }
}  // namespace

TEST_CASE("enumerate_partitions matches brute force and honors constraints") {
    CHECK(enumerate_partitions(0) == std::vector<Partition>{Partition{}});

    // (4, wd <= 2): brute-force all partitions of 4, filter width
    std::vector<Partition> expected;
    for (const auto& p : oracle::all_partitions(4))
        if (p.empty() || p[0] <= 2) expected.emplace_back(P(p));
    CHECK(enumerate_partitions(4, std::nullopt, 2) == expected);
    CHECK(enumerate_partitions(4, std::nullopt, 2) ==
          std::vector<Partition>{P({2, 2}), P({2, 1, 1}), P({1, 1, 1, 1})});

    CHECK(enumerate_partitions(3, 2, std::nullopt) ==
          std::vector<Partition>{P({3}), P({2, 1})});

    for (int n = 0; n <= 9; ++n) {
        auto got = enumerate_partitions(n);
        auto want = oracle::all_partitions(n);
        REQUIRE(got.size() == want.size());
        for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i].parts() == want[i]);
    }

    CHECK(enumerate_partitions(5, 1, 1).empty());  // impossible constraints
}

TEST_CASE("conjugate") {
    CHECK(conjugate(P({3, 2, 2, 1})) == P({4, 3, 1}));
    CHECK(conjugate(Partition{}) == Partition{});
    CHECK(conjugate(P({5})) == P({1, 1, 1, 1, 1}));

    oracle::Rng rng(42);
    for (int t = 0; t < 50; ++t) {
        Partition lam = rng.partition(rng.uniform_int(0, 12));
        CHECK(conjugate(conjugate(lam)) == lam);
        CHECK(lam.height() == conjugate(lam).width());
    }
}

TEST_CASE("hook lengths and contents") {
    CHECK(hook_lengths(P({5, 3, 2})) ==
          CellGrid{{7, 6, 4, 2, 1}, {4, 3, 1}, {2, 1}});
    CHECK(hook_lengths(P({1})) == CellGrid{{1}});
    CHECK(hook_lengths(P({2, 2})) == CellGrid{{3, 2}, {2, 1}});

    CHECK(contents(P({5, 3, 2})) ==
          CellGrid{{0, 1, 2, 3, 4}, {-1, 0, 1}, {-2, -1}});
    CHECK(contents(P({1})) == CellGrid{{0}});
    CHECK(contents(P({2, 2})) == CellGrid{{0, 1}, {-1, 0}});
}

TEST_CASE("content polynomial") {
    CHECK(content_polynomial(P({1}), 7) == 7);
    CHECK(content_polynomial(P({2, 1}), 3) == 24);
    CHECK(content_polynomial(P({4, 4, 3}), 3) == 259200);
    CHECK(content_polynomial(Partition{}, 5) == 1);
}

TEST_CASE("schur_at_ones") {
    CHECK(schur_at_ones(P({1}), 5) == 5);
    CHECK(schur_at_ones(P({2}), 4) == 10);
    CHECK(schur_at_ones(P({1, 1, 1}), 2) == 0);

    // hook-content value equals the SSYT count
    for (int n = 0; n <= 6; ++n)
        for (const auto& parts : oracle::all_partitions(n)) {
            Partition lam = P(parts);
            for (int d = 1; d <= 4; ++d)
                CHECK(schur_at_ones(lam, d) == Int(oracle::count_ssyt(lam, d)));
        }
}

TEST_CASE("irrep_dimension") {
    CHECK(irrep_dimension(P({6})) == 1);
    CHECK(irrep_dimension(P({1, 1, 1, 1})) == 1);
    CHECK(irrep_dimension(P({2, 1})) == 2);

    // regular-representation decomposition
    for (int n = 1; n <= 8; ++n) {
        Int total = 0;
        for (const auto& parts : oracle::all_partitions(n)) {
            Int dim = irrep_dimension(P(parts));
            total += dim * dim;
        }
        CHECK(total == factorial(n));
    }
}

TEST_CASE("schur/dimension/content-polynomial identity") {
    // s_lambda(d) / chi_lambda(1) = C_lambda(d) / n!
    for (int n = 0; n <= 7; ++n)
        for (const auto& parts : oracle::all_partitions(n)) {
            Partition lam = P(parts);
            for (int d = lam.height(); d <= lam.height() + 3; ++d) {
                if (d < 1) continue;
                Rat lhs(schur_at_ones(lam, d));
                lhs /= Rat(irrep_dimension(lam));
                Rat rhs(content_polynomial(lam, d));
                rhs /= Rat(factorial(n));
                CHECK(lhs == rhs);
            }
        }
}

TEST_CASE("dominance order") {
    CHECK(dominates(P({2, 2}), P({3, 1})));
    CHECK_FALSE(dominates(P({3, 1}), P({2, 2})));

    oracle::Rng rng(7);
    std::vector<Partition> pool;
    for (int t = 0; t < 40; ++t) pool.push_back(rng.partition(rng.uniform_int(0, 12)));
    for (const auto& a : pool) {
        CHECK(dominates(a, a));  // reflexive
        for (const auto& b : pool) {
            if (a.weight() == b.weight() && dominates(a, b) && dominates(b, a))
                CHECK(a == b);  // antisymmetric on equal weights
            for (const auto& c : pool)
                if (dominates(a, b) && dominates(b, c)) CHECK(dominates(a, c));
        }
    }
}

TEST_CASE("is_subpartition") {
    CHECK(is_subpartition(P({4, 1}), P({5, 3, 2})));
    CHECK_FALSE(is_subpartition(P({3, 3}), P({5, 2})));
    CHECK(is_subpartition(Partition{}, P({5, 3, 2})));
    CHECK(is_subpartition(Partition{}, Partition{}));
}

TEST_CASE("z_lambda") {
    CHECK(z_lambda(P({1, 1, 1})) == 6);
    CHECK(z_lambda(P({2, 1})) == 2);
    CHECK(z_lambda(P({3})) == 3);

    // against a direct centralizer count in S_n
    for (int n = 1; n <= 5; ++n)
        for (const auto& parts : oracle::all_partitions(n)) {
            Partition lam = P(parts);
            CHECK(z_lambda(lam) == Int(oracle::centralizer_size(lam)));
        }
}

TEST_CASE("dominance-monotone content polynomials") {
    // omega dominated by Omega (equal or smaller weight) implies
    // C_omega(d) <= C_Omega(d), strictly when different
    for (int n = 1; n <= 8; ++n) {
        auto parts = oracle::all_partitions(n);
        for (const auto& a : parts)
            for (const auto& b : parts) {
                Partition omega = P(a), Omega = P(b);
                if (!dominates(omega, Omega)) continue;
                int d = std::max(omega.height(), Omega.height()) + 2;
                Int ca = content_polynomial(omega, d);
                Int cb = content_polynomial(Omega, d);
                if (omega == Omega)
                    CHECK(ca == cb);
                else
                    CHECK(ca < cb);
            }
    }
    // unequal weights
    CHECK(content_polynomial(P({1}), 4) < content_polynomial(P({2}), 4));
    CHECK(content_polynomial(P({2, 1}), 4) < content_polynomial(P({4, 1}), 4));
}

TEST_CASE("partition validation") {
    CHECK_THROWS_AS(P({1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(P({2, 0}), std::invalid_argument);
    CHECK_THROWS_AS(P({-1}), std::invalid_argument);
}
