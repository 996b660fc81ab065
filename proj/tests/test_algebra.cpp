#include "duality_lab/algebra.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace duality_lab;

namespace {

constexpr double kTol = 1e-13;

double block_diff(const DenseOp& a, const DenseOp& b, int last) { return block_max_abs(a - b, last); }

struct Triple {
    DenseOp up, dn, h;
};

Triple ladders(const SiteSpace& s) {
    return {ladder(s, Ladder::Raise), ladder(s, Ladder::Lower), ladder(s, Ladder::Diag)};
}

}  // namespace

TEST(Ladder, Su11LowerActsAsXShift) {
    const SiteSpace s(SiteRep::su11(0.5, 0.5), 3);
    const DenseOp dn = ladder(s, Ladder::Lower);
    Eigen::VectorXcd f = Eigen::VectorXcd::Zero(3);
    f(1) = 1.0;  // f = delta_1
    const Eigen::VectorXcd g = dn * f;
    EXPECT_EQ(g(2), cplx(2.0));  // (K^- f)(2) = 2 f(1)
    EXPECT_EQ(g(0), cplx(0.0));
    EXPECT_EQ(g(1), cplx(0.0));
}

TEST(Ladder, Su2RaiseSquaredVanishesOnSpinHalf) {
    const SiteSpace s(SiteRep::su2(1, 0.5), 0);
    EXPECT_EQ(s.dim, 2);
    const DenseOp up = ladder(s, Ladder::Raise);
    EXPECT_EQ((up * up).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Ladder, HeisenbergDiagonalCountsOccupation) {
    // a a^dagger acts as f(x) -> x f(x); see the notes on the dual-algebra sign.
    const SiteSpace s(SiteRep::heisenberg(1.0), 5);
    const DenseOp h = ladder(s, Ladder::Diag);
    for (int x = 0; x < 5; ++x) EXPECT_EQ(h(x, x), cplx(x));
    const Triple t = ladders(s);
    EXPECT_LE(block_diff(t.dn * t.up, h, 3), kTol);
}

TEST(Weight, Examples) {
    EXPECT_NEAR(weight(SiteRep::su11(0.5, 0.5), 0), 0.5, 1e-15);
    EXPECT_NEAR(weight(SiteRep::su2(2, 0.5), 1), 0.5, 1e-15);
    EXPECT_NEAR(weight(SiteRep::heisenberg(1.0), 0), std::exp(-1.0), 1e-15);
}

TEST(Weight, MuUnnormalizedExamples) {
    EXPECT_EQ(mu_unnormalized(1.0, 0.5, 0), 1.0);
    EXPECT_NEAR(mu_unnormalized(1.0, 0.5, 2), 0.75, 1e-15);
    EXPECT_NEAR(mu_unnormalized(0.5, -1.0, 1), -1.0, 1e-15);
}

TEST(Weight, SumsToOne) {
    for (int two_j : {1, 2, 7}) {
        const SiteRep r = SiteRep::su2(two_j, 0.3);
        double s = 0.0;
        for (int x = 0; x <= two_j; ++x) s += weight(r, x);
        EXPECT_NEAR(s, 1.0, 1e-14);
    }
    for (const SiteRep& r : {SiteRep::su11(0.5, 0.3), SiteRep::su11(1.0, 0.5), SiteRep::heisenberg(2.0)}) {
        double s = 0.0;
        for (int x = 0; x <= 200; ++x) s += weight(r, x);
        EXPECT_NEAR(s, 1.0, 1e-12);
    }
}

TEST(Weight, RejectsBadParameters) {
    EXPECT_THROW(SiteRep::su11(0.0, 0.5), domain_error);
    EXPECT_THROW(SiteRep::su11(1.0, 1.0), domain_error);
    EXPECT_THROW(SiteRep::su2(0, 0.5), domain_error);
    EXPECT_THROW(SiteRep::heisenberg(-1.0), domain_error);
}

TEST(Commutator, OfItselfVanishes) {
    const Triple t = ladders(SiteSpace(SiteRep::su11(0.75, 0.4), 8));
    EXPECT_EQ(commutator(t.up, t.up).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Commutator, DimensionMismatchThrows) {
    EXPECT_THROW(commutator(DenseOp::Identity(2, 2), DenseOp::Identity(3, 3)), domain_error);
}

// Two bracket relations per algebra, interior block only for the
// truncated representations.
TEST(CommutationTable, Su11) {
    const SiteSpace s(SiteRep::su11(0.75, 0.4), 12);
    const Triple t = ladders(s);
    const int last = s.dim - 2;
    EXPECT_LE(block_diff(commutator(t.h, t.up), -t.up, last), kTol);
    EXPECT_LE(block_diff(commutator(t.h, t.dn), t.dn, last), kTol);
    EXPECT_LE(block_diff(commutator(t.up, t.dn), 2.0 * t.h, last), kTol);
}

TEST(CommutationTable, Su2IsExact) {
    const SiteSpace s(SiteRep::su2(5, 0.4), 0);
    const Triple t = ladders(s);
    const int last = s.dim - 1;
    EXPECT_LE(block_diff(commutator(t.h, t.up), -t.up, last), kTol);
    EXPECT_LE(block_diff(commutator(t.h, t.dn), t.dn, last), kTol);
    EXPECT_LE(block_diff(commutator(t.up, t.dn), -2.0 * t.h, last), kTol);
}

TEST(CommutationTable, Heisenberg) {
    const SiteSpace s(SiteRep::heisenberg(0.7), 12);
    const Triple t = ladders(s);
    const int last = s.dim - 2;
    EXPECT_LE(block_diff(commutator(t.dn, t.up), -DenseOp::Identity(s.dim, s.dim), last), kTol);
    EXPECT_LE(block_diff(commutator(t.h, t.dn), t.dn, last), kTol);
}

TEST(Adjoint, Su11) {
    const SiteRep r = SiteRep::su11(1.0, 0.3);
    const Triple t = ladders(SiteSpace(r, 12));
    EXPECT_LE(block_diff(adjoint_weighted(t.dn, r), r.p * t.up, 10), kTol);
    EXPECT_LE(block_diff(adjoint_weighted(t.up, r), t.dn / r.p, 10), kTol);
    EXPECT_LE(block_diff(adjoint_weighted(t.h, r), t.h, 11), kTol);
}

TEST(Adjoint, Su2IsExact) {
    const SiteRep r = SiteRep::su2(4, 0.3);
    const Triple t = ladders(SiteSpace(r, 0));
    const double c = (1 - r.p) / r.p;
    EXPECT_LE((adjoint_weighted(t.up, r) - c * t.dn).cwiseAbs().maxCoeff(), kTol);
    EXPECT_LE((adjoint_weighted(t.dn, r) - t.up / c).cwiseAbs().maxCoeff(), kTol);
    EXPECT_LE((adjoint_weighted(t.h, r) - t.h).cwiseAbs().maxCoeff(), kTol);
}

TEST(Adjoint, Heisenberg) {
    const SiteRep r = SiteRep::heisenberg(1.5);
    const Triple t = ladders(SiteSpace(r, 12));
    EXPECT_LE(block_diff(adjoint_weighted(t.dn, r), r.p * t.up, 10), kTol);
    EXPECT_LE(block_diff(adjoint_weighted(t.up, r), t.dn / r.p, 10), kTol);
}

TEST(Casimir, SpinHalfIsThreeHalves) {
    const SiteSpace s(SiteRep::su2(1, 0.5), 0);
    EXPECT_LE((casimir(s) - 1.5 * DenseOp::Identity(2, 2)).cwiseAbs().maxCoeff(), kTol);
}

TEST(Casimir, Su11ScalarOnInteriorBlock) {
    for (double k : {0.5, 1.0, 1.75}) {
        const SiteSpace s(SiteRep::su11(k, 0.5), 10);
        const DenseOp om = casimir(s);
        const double expected = 2 * k * (k - 1);
        EXPECT_LE(block_diff(om, expected * DenseOp::Identity(10, 10), 8), 1e-12) << k;
        const Triple t = ladders(s);
        EXPECT_LE(block_max_abs(commutator(om, t.h), 8), kTol);
        EXPECT_LE(block_max_abs(commutator(om, t.up), 7), kTol);
        EXPECT_LE(block_max_abs(commutator(om, t.dn), 7), kTol);
    }
}

TEST(Casimir, Su2CommutesWithEverything) {
    const SiteSpace s(SiteRep::su2(6, 0.5), 0);
    const DenseOp om = casimir(s);
    const Triple t = ladders(s);
    for (const DenseOp* g : {&t.up, &t.dn, &t.h}) EXPECT_LE(commutator(om, *g).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Casimir, HeisenbergHasNone) {
    EXPECT_THROW(casimir(SiteSpace(SiteRep::heisenberg(1.0), 4)), domain_error);
}

TEST(Embed, IdentityStaysIdentity) {
    const DenseOp I = DenseOp::Identity(3, 3);
    for (int site = 0; site < 3; ++site) EXPECT_EQ(embed(I, site, 3), DenseOp::Identity(27, 27));
}

TEST(Embed, CoproductOfDiagonalAddsOccupations) {
    const double k = 0.75;
    const SiteSpace s(SiteRep::su11(k, 0.5), 4);
    const DenseOp d = coproduct(ladder(s, Ladder::Diag), 2);
    for (int x1 = 0; x1 < 4; ++x1)
        for (int x2 = 0; x2 < 4; ++x2) {
            const int i = x1 * 4 + x2;
            EXPECT_NEAR(std::abs(d(i, i) - cplx((x1 + k) + (x2 + k))), 0.0, kTol);
        }
}

TEST(Embed, TwoSiteCasimirCommutesWithCoproduct) {
    // Omega_{12} = 2 D(K0)^2 - D(K+)D(K-) - D(K-)D(K+), interior: occupations <= 4 of 8.
    const SiteSpace s(SiteRep::su11(0.5, 0.5), 8);
    const Triple t = ladders(s);
    const DenseOp up = coproduct(t.up, 2), dn = coproduct(t.dn, 2), h = coproduct(t.h, 2);
    const DenseOp om = 2.0 * h * h - up * dn - dn * up;
    const DenseOp c = commutator(om, h);
    double worst = 0.0;
    for (int a = 0; a < 64; ++a)
        for (int b = 0; b < 64; ++b)
            if (a / 8 <= 4 && a % 8 <= 4 && b / 8 <= 4 && b % 8 <= 4) worst = std::max(worst, std::abs(c(a, b)));
    EXPECT_LE(worst, kTol);
}

TEST(Embed, RejectsOversizedTensor) {
    EXPECT_THROW(embed(DenseOp::Identity(20, 20), 0, 3), domain_error);
    EXPECT_THROW(embed(DenseOp::Identity(2, 2), 3, 3), domain_error);
}
