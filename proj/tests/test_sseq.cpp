#include "ess/sseq.hpp"

#include <gtest/gtest.h>

using namespace ess;

namespace {

// Cells b_{mρ} (filtration 2m) and b_{mρ+σ} (filtration 2m+1) for m < n.
std::shared_ptr<const ChainModel> hz_cells(std::int64_t n)
{
    CellBasis cells;
    for (std::int64_t m = 0; m < n; ++m) {
        cells.push_back({"b" + std::to_string(2 * m), m * RODegree::rho(), 2 * m});
        cells.push_back({"b" + std::to_string(2 * m + 1), m * RODegree::rho() + RODegree::sigma(), 2 * m + 1});
    }
    return std::make_shared<ChainModel>(GradedRing(RingKind::HZ), cells, FiltrationMode::Cell);
}

DifferentialRule times_two_d1(const std::shared_ptr<const ChainModel>& model)
{
    return {"d1", -1, [model](const Term& t) {
                Chain c;
                if (t.cell % 2 == 0 && t.cell > 0)
                    add_to(c, Term{t.coeff, t.cell - 1, t.vbar}, 2);
                return c;
            }};
}

NormalForm torsion_of(const PresentedGroup& g) { return g.normal_form(); }

}  // namespace

TEST(Sseq, E1IsCoefficientsTimesCells)
{
    auto model = hz_cells(4);
    Page e1 = build_E1(model, Region(DegreeWindow::square(6, 7)));
    const GradedRing hz(RingKind::HZ);
    DegreeWindow::square(4, 0).for_each([&](const RODegree& w) {
        EXPECT_EQ(e1.group_at({0, w}), hz.group_at(w).normal_form());
        EXPECT_EQ(e1.group_at({3, w + RODegree::rho() + RODegree::sigma()}), hz.group_at(w).normal_form());
    });
}

TEST(Sseq, ZeroDifferentialIsIdempotent)
{
    auto model = hz_cells(3);
    Page e1 = build_E1(model, Region(DegreeWindow::square(4, 5)));
    Page e2 = turn_page(install(e1, {"zero", -1, [](const Term&) { return Chain{}; }}));
    EXPECT_EQ(e2.index(), 2);
    ASSERT_EQ(e2.entries().size(), e1.entries().size());
    for (const auto& [k, e] : e1.entries())
        EXPECT_EQ(e2.group_at(k), e.normal_form());
}

TEST(Sseq, TimesTwoDifferentialGivesKernelAndCokernel)
{
    auto model = hz_cells(5);
    Page e1 = build_E1(model, Region(DegreeWindow::square(5, 9)));
    Page e2 = turn_page(install(e1, times_two_d1(model)));
    const GradedRing hz(RingKind::HZ);
    DegreeWindow::square(3, 0).for_each([&](const RODegree& w) {
        auto g = hz.group_at(w);
        GroupMap times2 = GroupMap::multiplication(g, 2);
        EXPECT_EQ(e2.group_at({0, w}), g.normal_form()) << w;
        EXPECT_EQ(e2.group_at({1, w + RODegree::sigma()}), torsion_of(cokernel(times2))) << w;
        EXPECT_EQ(e2.group_at({2, w + RODegree::rho()}), torsion_of(kernel(times2))) << w;
        EXPECT_TRUE(e2.known({2, w + RODegree::rho()}));
    });
}

TEST(Sseq, IllDefinedRuleIsRejected)
{
    auto model = hz_cells(2);
    Page e1 = build_E1(model, Region(DegreeWindow::square(4, 3)));
    // Every class on b2 goes to u·b1, which has the wrong degree.
    DifferentialRule bad{"bad", -1, [](const Term& t) {
                             Chain c;
                             if (t.cell == 2)
                                 add_to(c, Term{positive(1, 0), 1, 0}, 1);
                             return c;
                         }};
    EXPECT_THROW(install(e1, bad), ComputationError);
}

TEST(Sseq, SquareNonzeroIsRejected)
{
    CellBasis cells{{"x", RODegree(2, 0), 2}, {"y", RODegree(1, 0), 1}, {"z", RODegree(0, 0), 0}};
    auto model = std::make_shared<ChainModel>(GradedRing(RingKind::HZ), cells, FiltrationMode::Cell);
    Page e1 = build_E1(model, Region(DegreeWindow::square(3, 2)));
    DifferentialRule bad{"bad", -1, [](const Term& t) {
                             Chain c;
                             if (t.cell < 2 && t.coeff == Monomial::one())
                                 add_to(c, Term{t.coeff, t.cell + 1, 0}, 1);
                             return c;
                         }};
    EXPECT_THROW(install(e1, bad), ComputationError);
}

TEST(Sseq, UnknownNearTheRegionEdge)
{
    auto model = hz_cells(6);
    // Region stops at filtration 4; the d1 source b6 sits outside but E1 data is exact.
    Page e1 = build_E1(model, Region(DegreeWindow::square(6, 9), 0, 4));
    Page e2 = turn_page(install(e1, times_two_d1(model)));
    EXPECT_TRUE(e2.known({4, RODegree(2, 2)}));
    EXPECT_FALSE(e2.known({5, RODegree(2, 3)}));
}

TEST(Sseq, InducedDifferentialAndOperators)
{
    auto model = hz_cells(3);
    Page e1 = install(build_E1(model, Region(DegreeWindow::square(5, 5))), times_two_d1(model));
    auto d = induced_differential(e1, {2, RODegree::rho()});
    ASSERT_TRUE(d);
    ASSERT_EQ(d->rows(), 1u);
    EXPECT_EQ((*d)(0, 0), 2);

    Page e2 = turn_page(e1);
    // a-multiplication from b0 to a·b0 on E2.
    auto a = induced_operator(multiply_by(*model, positive(0, 1)), e2, {0, RODegree::zero()}, e2,
                              {0, RODegree(0, -1)});
    ASSERT_TRUE(a);
    EXPECT_EQ((*a)(0, 0), 1);
    auto labels = generator_labels(*model, *e2.find({1, RODegree::sigma()}));
    EXPECT_EQ(labels, (std::vector<std::string>{"b1"}));
}

TEST(Sseq, CompareIdentity)
{
    auto model = hz_cells(3);
    Page p = install(build_E1(model, Region(DegreeWindow::square(4, 5))), times_two_d1(model));
    Morphism id{"id", [](const Term& t) { return Chain{{t, 1}}; }, 0, {}};
    auto rep = compare(id, p, p);
    EXPECT_TRUE(rep.ok);
    EXPECT_GT(rep.checked, 0u);
    Morphism twice{"shift", [](const Term& t) {
                       Chain c;
                       if (t.cell == 0)
                           add_to(c, Term{t.coeff, 2, 0}, 1);
                       return c;
                   },
                   2, RODegree::rho()};
    EXPECT_FALSE(compare(twice, p, p).ok);
}

TEST(Sseq, VanishingCheckCountsCandidates)
{
    auto model = hz_cells(4);
    Page e2 = turn_page(install(build_E1(model, Region(DegreeWindow::square(5, 7))), times_two_d1(model)));
    auto rep = exhaustive_vanishing_check(e2, 2, 3, [](int r) { return -static_cast<std::int64_t>(r); },
                                          {hom_vanishing_reason()});
    EXPECT_GT(rep.spots_checked, 0u);
    for (const auto& c : rep.candidates)
        if (c.resolved())
            EXPECT_TRUE(hom_vanishes(c.source_group, c.target_group));
}
