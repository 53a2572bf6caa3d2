#include "ess/derived_modules.hpp"

#include <gtest/gtest.h>

using namespace ess;

namespace {

const DerivedModules M;
const GradedRing HZ{RingKind::HZ};

// Hand-derived survivor rule for one HZ basis monomial under d₃ (monomials go to monomials).
// Returns the order of the surviving summand: -1 none, 0 for Z, 2 for Z/2.
int survivor(ModuleKind k, const Monomial& x, std::int64_t m)
{
    const bool interior = m >= 1;
    switch (x.family) {
    case Family::Positive: {
        const bool in_k = x.a > 0;
        if (k == ModuleKind::Kbar && !in_k)
            return -1;
        if (x.u % 2 == 1) {
            // d₃(u^i a^j) = u^{i-1} a^{j+3}; on Z only 2u^i survives.
            return (k == ModuleKind::Dbar && x.a == 0) ? 0 : -1;
        }
        // Hit by u^{i+1} a^{j-3}; in K the source must itself be torsion.
        const std::int64_t need = k == ModuleKind::Kbar ? 4 : 3;
        if (interior && x.a >= need)
            return -1;
        return (k == ModuleKind::Dbar && x.a == 0) ? 0 : 2;
    }
    case Family::Theta2:
        if (k == ModuleKind::Kbar)
            return -1;
        return k == ModuleKind::Dbar ? 0 : 2;
    case Family::Theta3:
        if (x.u % 2 == 0 && x.a >= 3)
            return -1;
        if (interior && x.u % 2 == 1)
            return -1;
        return 2;
    default: return -1;
    }
}

NormalForm expected(ModuleKind k, const RODegree& w, std::int64_t m)
{
    NormalForm nf;
    for (const auto& b : HZ.basis(w)) {
        int s = survivor(k, b.monomial, m);
        if (s == 0)
            ++nf.free_rank;
        else if (s == 2)
            nf.torsion.push_back(2);
    }
    return nf;
}

}  // namespace

TEST(DerivedModules, KAndCExamples)
{
    auto k = M.K({0, -1});
    EXPECT_EQ(k.normal_form().torsion, std::vector<Integer>{2});
    EXPECT_EQ(k.normal_labels(), std::vector<std::string>{"a"});
    EXPECT_EQ(M.C({0, 0}).normal_form().torsion, std::vector<Integer>{2});
    EXPECT_TRUE(M.K({0, 0}).is_zero());
    // θ₂ has infinite order, so nothing in its degree is 2-torsion.
    EXPECT_TRUE(M.K({-2, 2}).is_zero());
}

TEST(DerivedModules, KAndCAgainstBasisOrders)
{
    DegreeWindow::square(12, 0).for_each([](const RODegree& w) {
        std::size_t torsion = 0, total = 0;
        for (const auto& b : HZ.basis(w)) {
            ++total;
            torsion += b.order == 2;
        }
        EXPECT_EQ(M.K(w).normal_form(), (NormalForm{std::vector<Integer>(torsion, 2), 0})) << w;
        EXPECT_EQ(M.C(w).normal_form(), (NormalForm{std::vector<Integer>(total, 2), 0})) << w;
        // |K|·|2·HZ| = |HZ| when HZ is finite; here 2·HZ vanishes on torsion.
        if (M.ring().group_at(w).normal_form().free_rank == 0)
            EXPECT_EQ(M.K(w).order(), M.ring().group_at(w).order());
    });
}

TEST(DerivedModules, KInjectsIntoHF2)
{
    DegreeWindow::square(12, 0).for_each([](const RODegree& w) { EXPECT_TRUE(M.k_injects_into_hf2(w)) << w; });
}

TEST(DerivedModules, BarExamples)
{
    // 2u survives, u does not.
    auto d = M.bar(ModuleKind::Dbar, {2, -2}, 0);
    EXPECT_EQ(d.normal_form(), (NormalForm{{}, 1}));
    EXPECT_EQ(d.normal_labels(), std::vector<std::string>{"2·u"});
    // a³ on C is hit from u once a v̄₁ is available.
    EXPECT_TRUE(M.bar(ModuleKind::Cbar, {0, -3}, 1).is_zero());
    EXPECT_FALSE(M.bar(ModuleKind::Cbar, {0, -3}, 0).is_zero());
    // a³ in K is not hit: u is not 2-torsion.
    EXPECT_FALSE(M.bar(ModuleKind::Kbar, {0, -3}, 1).is_zero());
    EXPECT_TRUE(M.bar(ModuleKind::Kbar, {0, -4}, 1).is_zero());
}

TEST(DerivedModules, BarAgainstHandRule)
{
    for (ModuleKind k : {ModuleKind::Dbar, ModuleKind::Cbar, ModuleKind::Kbar})
        for (std::int64_t m : {0, 1, 3})
            DegreeWindow::square(12, 0).for_each([&](const RODegree& w) {
                EXPECT_EQ(M.bar(k, w, m).normal_form(), expected(k, w, m)) << to_string(k) << " " << w << " m=" << m;
            });
}

TEST(DerivedModules, ActionOnK)
{
    // a: K_{(0,-1)} → K_{(0,-2)} is an isomorphism Z/2 → Z/2.
    auto act = M.action(ModuleKind::K, positive(0, 1), {0, -1});
    EXPECT_FALSE(act.is_zero());
    auto c = M.action(ModuleKind::C, positive(1, 0), {0, 0});
    EXPECT_FALSE(c.is_zero());
    EXPECT_THROW(M.action(ModuleKind::Dbar, positive(1, 0), {0, 0}), std::invalid_argument);
}
