#include "cftkit/error.hpp"
#include "cftkit/minimal.hpp"
#include "cftkit/modinv.hpp"
#include "cftkit/sl2.hpp"
#include "oracles/oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>

using namespace cftkit;

namespace {

std::vector<IntMatrix> matrices(const std::vector<ModularInvariant>& v) {
    std::vector<IntMatrix> out;
    for (const auto& x : v) out.push_back(x.matrix);
    std::sort(out.begin(), out.end());
    return out;
}

std::map<std::string, IntMatrix> by_tag(const std::vector<ModularInvariant>& v) {
    std::map<std::string, IntMatrix> out;
    for (const auto& x : v) out[x.tag] = x.matrix;
    return out;
}

long rational_rank(std::vector<std::vector<Rational>> rows) {
    long rank = 0;
    const std::size_t cols = rows.empty() ? 0 : rows[0].size();
    for (std::size_t c = 0; c < cols && rank < static_cast<long>(rows.size()); ++c) {
        std::size_t sel = rows.size();
        for (std::size_t r = rank; r < rows.size(); ++r)
            if (rows[r][c] != 0) sel = r;
        if (sel == rows.size()) continue;
        std::swap(rows[rank], rows[sel]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == static_cast<std::size_t>(rank) || rows[r][c] == 0) continue;
            Rational f = rows[r][c] / rows[rank][c];
            for (std::size_t k = 0; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
        }
        ++rank;
    }
    return rank;
}

std::vector<Rational> over_unknowns(const CommutantBasis& cb, const IntMatrix& x) {
    std::vector<Rational> v;
    for (auto [i, j] : cb.unknowns) v.emplace_back(x(i, j));
    return v;
}

}  // namespace

TEST(VerifyInvariant, Examples) {
    ModularData d10 = sl2_modular_data(10);
    EXPECT_TRUE(verify_invariant(identity_matrix(11), d10).passed());
    EXPECT_TRUE(verify_invariant(*sl2_template(10, "E6"), d10).passed());

    IntMatrix bad = identity_matrix(11);
    bad(0, 1) = 1;
    InvariantReport r = verify_invariant(bad, d10);
    EXPECT_EQ(r.failed_axiom, "M3b");
    EXPECT_NE(r.witness.find("1/16"), std::string::npos);

    IntMatrix neg = identity_matrix(11);
    neg(2, 2) = -1;
    EXPECT_EQ(verify_invariant(neg, d10).failed_axiom, "M1");
    IntMatrix vac = identity_matrix(11);
    vac(0, 0) = 2;
    EXPECT_EQ(verify_invariant(vac, d10).failed_axiom, "M2");
    IntMatrix half = identity_matrix(11);
    half(0, 6) = 1;
    EXPECT_EQ(verify_invariant(half, d10).failed_axiom, "M3a");

    EXPECT_THROW(verify_invariant(identity_matrix(3), d10), UsageError);
}

TEST(CommutantBasis, DimensionsMatchFloatingPointOracle) {
    for (long k = 1; k <= 10; ++k) {
        std::vector<std::pair<long, long>> w;
        for (long j = 0; j <= k; ++j) w.push_back(oracle::sl2_weight_fraction(k, j));
        EXPECT_EQ(static_cast<long>(commutant_basis(sl2_modular_data(k)).dimension()),
                  oracle::commutant_dimension(oracle::sl2_s_conjugates(k), w))
            << "k=" << k;
    }
    for (long m = 1; m <= 4; ++m) {
        std::vector<std::pair<long, long>> w;
        auto conj = oracle::minimal_s_conjugates(m, w);
        EXPECT_EQ(static_cast<long>(commutant_basis(minimal_modular_data(m)).dimension()),
                  oracle::commutant_dimension(conj, w))
            << "m=" << m;
    }
}

TEST(CommutantBasis, Examples) {
    EXPECT_EQ(commutant_basis(sl2_modular_data(1)).dimension(), 1u);
    EXPECT_EQ(commutant_basis(sl2_modular_data(4)).dimension(), 2u);

    CommutantBasis cb = commutant_basis(sl2_modular_data(10));
    EXPECT_EQ(cb.unknowns.front(), std::make_pair(std::size_t{0}, std::size_t{0}));
    std::vector<std::vector<Rational>> three;
    for (const char* tag : {"A", "D_odd", "E6"}) three.push_back(over_unknowns(cb, *sl2_template(10, tag)));
    EXPECT_EQ(rational_rank(three), 3);
    std::vector<std::vector<Rational>> all = cb.basis;
    all.insert(all.end(), three.begin(), three.end());
    EXPECT_EQ(rational_rank(all), static_cast<long>(cb.dimension()));
}

TEST(CommutantBasis, ElementsCommute) {
    for (long k : {6L, 16L}) {
        ModularData d = sl2_modular_data(k);
        CommutantBasis cb = commutant_basis(d);
        for (std::size_t e = 0; e < cb.dimension(); ++e) {
            IntMatrix x = cb.integer_element(e);
            InvariantReport r = verify_invariant(x, d);
            EXPECT_TRUE(r.passed() || r.failed_axiom == "M1" || r.failed_axiom == "M2") << r.witness;
        }
    }
}

TEST(EnumeratePhysical, Sl2MatchesTemplates) {
    const std::map<long, std::size_t> counts = {{1, 1}, {2, 1},  {3, 1}, {4, 2},  {5, 1},  {6, 2},  {7, 1},
                                                {8, 2}, {9, 1},  {10, 3}, {11, 1}, {12, 2}, {16, 3}, {28, 3}};
    for (auto [k, count] : counts) {
        ModularData d = sl2_modular_data(k);
        auto found = enumerate_physical(d);
        auto expected = expected_invariants(d.theory);
        EXPECT_EQ(found.size(), count) << "k=" << k;
        EXPECT_EQ(matrices(found), matrices(expected)) << "k=" << k;
        for (const auto& x : found) {
            EXPECT_NE(x.tag, "unknown");
            EXPECT_TRUE(verify_invariant(x.matrix, d).passed());
            EXPECT_TRUE(verify_invariant(x.matrix.transposed(), d).passed());
        }
    }
}

TEST(EnumeratePhysical, Sl2Examples) {
    auto k3 = enumerate_physical(sl2_modular_data(3));
    ASSERT_EQ(k3.size(), 1u);
    EXPECT_EQ(k3[0].matrix, identity_matrix(4));

    auto k4 = by_tag(enumerate_physical(sl2_modular_data(4)));
    ASSERT_EQ(k4.size(), 2u);
    EXPECT_EQ(k4["D_even"](2, 2), 2);
    EXPECT_EQ(k4["D_even"](0, 4), 1);

    auto k10 = by_tag(enumerate_physical(sl2_modular_data(10)));
    EXPECT_EQ(k10.size(), 3u);
    EXPECT_TRUE(k10.count("A") && k10.count("D_odd") && k10.count("E6"));
}

TEST(EnumeratePhysical, MinimalMatchesTemplates) {
    for (long m = 3; m <= 6; ++m) {
        ModularData d = minimal_modular_data(m);
        auto found = enumerate_physical(d);
        EXPECT_EQ(found.size(), 2u) << "m=" << m;
        EXPECT_EQ(matrices(found), matrices(expected_invariants(d.theory))) << "m=" << m;
        for (const auto& x : found) {
            EXPECT_NE(x.tag, "unknown");
            EXPECT_TRUE(verify_invariant(x.matrix.transposed(), d).passed());
        }
    }
}

TEST(EnumeratePhysical, CapAndRefusal) {
    ModularData d = sl2_modular_data(4);
    EnumerationOptions capped;
    capped.cap = 1;
    auto found = enumerate_physical(d, capped);
    ASSERT_EQ(found.size(), 1u);
    EXPECT_EQ(found[0].tag, "A");

    EnumerationOptions tiny;
    tiny.max_search = 1;
    EXPECT_THROW(enumerate_physical(sl2_modular_data(10), tiny), UsageError);

    CommutantBasis other = commutant_basis(sl2_modular_data(5));
    EnumerationOptions wrong;
    wrong.commutant = &other;
    EXPECT_THROW(enumerate_physical(d, wrong), UsageError);
}

TEST(ClassifyInvariant, Examples) {
    ModularData d16 = sl2_modular_data(16);
    EXPECT_EQ(classify_invariant(identity_matrix(17), d16), "A");
    IntMatrix e7 = *sl2_template(16, "E7");
    EXPECT_EQ(classify_invariant(e7, d16), "E7");
    EXPECT_EQ(e7(2, 8), 1);
    EXPECT_EQ(e7(8, 14), 1);
    EXPECT_TRUE(verify_invariant(e7, d16).passed());

    IntMatrix d6 = IntMatrix::square(7, 0);
    for (long j = 0; j <= 6; ++j) d6(j, j % 2 ? 6 - j : j) = 1;
    EXPECT_EQ(classify_invariant(d6, sl2_modular_data(6)), "D_odd");

    IntMatrix other = identity_matrix(17);
    other(0, 0) = 3;
    EXPECT_EQ(classify_invariant(other, d16), "unknown");
}

TEST(InvariantFromExtension, Examples) {
    ModularData d4 = sl2_modular_data(4);
    ExtensionDecomposition trivial;
    for (std::size_t i = 0; i < 5; ++i) {
        std::vector<long> row(5, 0);
        row[i] = 1;
        trivial.rows.push_back(row);
    }
    EXPECT_EQ(invariant_from_extension(trivial, d4).matrix, identity_matrix(5));
    EXPECT_EQ(invariant_from_extension(trivial, d4).tag, "A");

    ExtensionDecomposition theorem_a{{{1, 0, 0, 0, 1}, {0, 0, 1, 0, 0}, {0, 0, 1, 0, 0}}};
    ModularInvariant x = invariant_from_extension(theorem_a, d4);
    EXPECT_EQ(x.tag, "D_even");
    EXPECT_EQ(x.matrix(2, 2), 2);
    for (auto [i, j] : {std::pair{0, 0}, {0, 4}, {4, 0}, {4, 4}}) EXPECT_EQ(x.matrix(i, j), 1);

    ExtensionDecomposition e6{{{1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0},
                               {0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0},
                               {0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1}}};
    EXPECT_EQ(invariant_from_extension(e6, sl2_modular_data(10)).tag, "E6");

    ExtensionDecomposition broken{{{1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0}}};
    EXPECT_THROW(invariant_from_extension(broken, sl2_modular_data(10)), ConsistencyError);
    EXPECT_THROW(invariant_from_extension(theorem_a, sl2_modular_data(5)), UsageError);
}

TEST(ExpectedInvariants, Examples) {
    auto k28 = expected_invariants({Algebra::Sl2, 28});
    ASSERT_EQ(k28.size(), 3u);
    EXPECT_EQ(k28[0].tag, "A");
    EXPECT_EQ(k28[1].tag, "D_even");
    EXPECT_EQ(k28[2].tag, "E8");
    const IntMatrix& e8 = k28[2].matrix;
    for (long i : {0, 10, 18, 28})
        for (long j : {0, 10, 18, 28}) EXPECT_EQ(e8(i, j), 1);
    for (long i : {6, 12, 16, 22})
        for (long j : {6, 12, 16, 22}) EXPECT_EQ(e8(i, j), 1);
    EXPECT_EQ(e8(0, 6), 0);

    auto k2 = expected_invariants({Algebra::Sl2, 2});
    ASSERT_EQ(k2.size(), 1u);
    EXPECT_EQ(k2[0].tag, "A");

    auto m2 = expected_invariants({Algebra::Minimal, 2});
    ASSERT_EQ(m2.size(), 1u);
    EXPECT_EQ(m2[0].tag, "(A,A)");

    MinimalModel model = minimal_model(9);
    auto m9 = by_tag(expected_invariants({Algebra::Minimal, 9}));
    ASSERT_TRUE(m9.count("(A,E6)"));
    const IntMatrix& x = m9["(A,E6)"];
    for (long r = 1; r <= 5; ++r) {
        for (auto [s1, s2] : {std::pair{1L, 7L}, {4L, 8L}, {5L, 11L}}) {
            std::size_t a = model.index_of(r, s1), b = model.index_of(r, s2);
            EXPECT_EQ(x(a, b), 1) << r;
            EXPECT_EQ(x(a, a), 1) << r;
        }
    }
    auto m27 = by_tag(expected_invariants({Algebra::Minimal, 27}));
    EXPECT_TRUE(m27.count("(A,E8)"));
    EXPECT_TRUE(by_tag(expected_invariants({Algebra::Minimal, 16})).count("(E7,A)"));
    EXPECT_TRUE(by_tag(expected_invariants({Algebra::Minimal, 15})).count("(A,E7)"));
}

TEST(ExpectedInvariants, MinimalRowsVerify) {
    for (long m : {3L, 4L, 5L, 6L, 7L, 8L, 9L, 10L, 15L, 16L, 27L, 28L}) {
        ModularData d = minimal_modular_data(m);
        for (const auto& x : expected_invariants(d.theory)) {
            InvariantReport r = verify_invariant(x.matrix, d);
            EXPECT_TRUE(r.passed()) << "m=" << m << " " << x.tag << ": " << r.failed_axiom << " " << r.witness;
            EXPECT_EQ(classify_invariant(x.matrix, d), x.tag);
        }
    }
}

TEST(ExpectedInvariants, Sl2RowsVerify) {
    for (long k = 1; k <= 30; ++k) {
        ModularData d = sl2_modular_data(k);
        for (const auto& x : expected_invariants(d.theory))
            EXPECT_TRUE(verify_invariant(x.matrix, d).passed()) << "k=" << k << " " << x.tag;
    }
}

TEST(MinimalPairMatrix, RejectsNonDescendingFactor) {
    IntMatrix r = identity_matrix(4);
    IntMatrix s = identity_matrix(5);
    s(0, 1) = 1;
    EXPECT_THROW(minimal_pair_matrix(3, r, s), ConsistencyError);
    EXPECT_THROW(minimal_pair_matrix(3, identity_matrix(3), s), UsageError);
}
