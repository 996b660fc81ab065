#include "duality_lab/symmetries.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace duality_lab;
using std::numbers::pi;

namespace {

double max_abs(const DenseOp& a) { return a.size() ? a.cwiseAbs().maxCoeff() : 0.0; }

RateMatrix range_generator(const Graph& g, const SiteRep& r, int hi) {
    return build_generator(std::make_shared<const SectorSpace>(enumerate_range(g, r, 0, hi)));
}

}  // namespace

TEST(ExpLadder, ZeroCoefficientIsIdentity) {
    const SiteSpace s(SiteRep::su11(0.75, 0.5), 9);
    EXPECT_EQ(exp_ladder(0.0, Ladder::Raise, s), DenseOp::Identity(9, 9));
    EXPECT_EQ(exp_ladder(0.0, Ladder::Lower, s), DenseOp::Identity(9, 9));
    EXPECT_THROW(exp_ladder(1.0, Ladder::Diag, s), domain_error);
}

TEST(ExpLadder, LoweringOnCheapGivesClassical) {
    for (const SiteRep& r : {SiteRep::su11(0.5, 0.3), SiteRep::su2(4, 0.5), SiteRep::heisenberg(1.0)}) {
        const SiteSpace s(r, 21);
        const DenseOp E = exp_ladder(1.0, Ladder::Lower, s);
        const auto cl = classical(r);
        for (int x = 0; x < s.dim; ++x)
            for (int y = 0; y < s.dim; ++y)
                EXPECT_LE(mixed_relative(E(x, y) * cheap_diagonal(r, y), cl(x, y)), 1e-12) << r.label();
    }
}

TEST(ExpLadder, HeisenbergTwoTermAction) {
    // (e^{a} f)(1) = f(1) + f(0).
    const DenseOp E = exp_ladder(1.0, Ladder::Lower, SiteSpace(SiteRep::heisenberg(1.0), 4));
    EXPECT_EQ(E(1, 0), cplx(1.0));
    EXPECT_EQ(E(1, 1), cplx(1.0));
    EXPECT_EQ(E(1, 2), cplx(0.0));
}

// The closed-form entries against a plain power series of the nilpotent
// truncated ladder.
TEST(ExpLadder, MatchesSeriesOnFiniteSpace) {
    for (const SiteRep& r : {SiteRep::su11(0.75, 0.5), SiteRep::su2(5, 0.5), SiteRep::heisenberg(1.0)})
        for (Ladder which : {Ladder::Raise, Ladder::Lower}) {
            const SiteSpace s(r, 8);
            const DenseOp A = 0.7 * ladder(s, which);
            DenseOp sum = DenseOp::Identity(s.dim, s.dim), term = sum;
            for (int n = 1; n < s.dim; ++n) {
                term = (term * A / double(n)).eval();
                sum += term;
            }
            EXPECT_LE(max_abs(sum - exp_ladder(0.7, which, s)), 1e-12 * max_abs(sum));
        }
}

TEST(ExpDiagonal, Examples) {
    const SiteSpace s(SiteRep::su11(0.5, 0.5), 6);
    EXPECT_EQ(exp_diagonal(0.0, s), DenseOp::Identity(6, 6));
    const DenseOp P = exp_diagonal(cplx(0.0, pi), s);
    for (int x = 0; x < 6; ++x)
        EXPECT_LE(std::abs(P(x, x) - double(x % 2 ? -1 : 1) * std::exp(cplx(0.0, pi * 0.5))), 1e-14);
    const DenseOp Q = exp_diagonal(log_p_minus_one(0.75), SiteSpace(SiteRep::su11(1.0, 0.75), 2));
    EXPECT_LE(std::abs(Q(0, 0) - cplx(-0.25)), 1e-16);
}

TEST(UnitarySymmetry, ZeroAnglesIsIdentity) {
    for (const SiteRep& r : {SiteRep::su11(1.0, 0.5), SiteRep::su2(3, 0.3), SiteRep::heisenberg(1.0)}) {
        const Symmetry S = unitary_symmetry(r, 0.0, 0.0, 20);
        EXPECT_LE(max_abs(S.block(S.dim - 1) - DenseOp::Identity(S.dim, S.dim)), 1e-14);
    }
}

TEST(UnitarySymmetry, SepIsUnitaryOnAGrid) {
    for (int two_j : {1, 2, 5})
        for (double p : {0.3, 0.5})
            for (int a = 0; a < 5; ++a)
                for (int b = 0; b < 5; ++b) {
                    const Symmetry S = unitary_symmetry(SiteRep::su2(two_j, p), -pi + a * pi / 2, -2.0 + b, 0);
                    EXPECT_LE(weighted_unitarity_defect(S), 1e-12);
                }
}

TEST(UnitarySymmetry, UnboundedDefectShrinksUnderDoubling) {
    for (const SiteRep& r : {SiteRep::su11(0.5, 0.3), SiteRep::su11(1.0, 0.5), SiteRep::heisenberg(0.5)}) {
        const auto rep = unitarity_under_doubling(r, alpha_hat, beta_hat(r), 120, 20);
        EXPECT_LE(rep.defect, 1e-8) << r.label();
        EXPECT_TRUE(rep.decreasing) << r.label() << ' ' << rep.defect << ' ' << rep.defect_doubled;
    }
}

TEST(UnitarySymmetry, SepNormPreservation) {
    const SiteRep r = SiteRep::su2(4, 0.3);
    const Symmetry S = unitary_symmetry(r, 0.9, -1.3, 0);
    const DenseOp D = apply_to_cheap(S, r.two_j);
    for (int y = 0; y <= r.two_j; ++y) {
        double lhs = 0.0;
        for (int x = 0; x <= r.two_j; ++x) lhs += std::norm(D(x, y)) * weight(r, x);
        const double rhs = std::pow(cheap_diagonal(r, y), 2) * weight(r, y);
        EXPECT_NEAR(lhs, rhs, 1e-12 * rhs);
    }
}

TEST(ApplyToCheap, IdentityLeavesCheap) {
    const SiteRep r = SiteRep::su11(0.5, 0.3);
    const DenseOp D = apply_to_cheap(unitary_symmetry(r, 0.0, 0.0, 30), 10);
    for (int x = 0; x <= 10; ++x)
        for (int y = 0; y <= 10; ++y) EXPECT_LE(mixed_relative(D(x, y), cheap(r)(x, y)), 1e-12);
}

TEST(ApplyToCheap, OrthogonalPolynomials) {
    struct Case {
        SiteRep r;
        int N, block;
        double tol;
    };
    for (const Case& c : {Case{SiteRep::su11(1.0, 0.5), 120, 20, 1e-8}, Case{SiteRep::su11(0.5, 0.3), 240, 40, 1e-8},
                          Case{SiteRep::heisenberg(1.0), 120, 20, 1e-8}, Case{SiteRep::su2(2, 0.5), 0, 2, 1e-12},
                          Case{SiteRep::su2(7, 0.3), 0, 7, 1e-12}}) {
        const Symmetry S = unitary_symmetry(c.r, alpha_hat, beta_hat(c.r), c.N + 1);
        EXPECT_LE(orthogonal_identification_residual(apply_to_cheap(S, c.block), c.r, c.block), c.tol) << c.r.label();
    }
}

TEST(Factorized, SpinHalfMatchesUnitary) {
    const SiteRep r = SiteRep::su2(1, 0.5);
    EXPECT_LE(factorized_vs_unitary(factorized_symmetry(r, 1), unitary_symmetry(r, alpha_hat, beta_hat(r), 0), 1),
              1e-12);
}

TEST(Factorized, MatchesUnitaryOnInteriorBlock) {
    for (const SiteRep& r : {SiteRep::su11(0.5, 0.5), SiteRep::su11(1.0, 0.3), SiteRep::heisenberg(1.0)}) {
        const auto F = factorized_symmetry(r, 40);
        const double a = factorized_vs_unitary(F, unitary_symmetry(r, alpha_hat, beta_hat(r), 241), 40);
        const double b = factorized_vs_unitary(F, unitary_symmetry(r, alpha_hat, beta_hat(r), 481), 40);
        EXPECT_LE(std::max(a, b), 1e-8) << r.label();
    }
    for (const SiteRep& r : {SiteRep::su2(2, 0.3), SiteRep::su2(6, 0.5)})
        EXPECT_LE(factorized_vs_unitary(factorized_symmetry(r, r.two_j),
                                        unitary_symmetry(r, alpha_hat, beta_hat(r), 0), r.two_j),
                  1e-12);
}

TEST(Factorized, OnCheapGivesMeixner) {
    for (double k : {0.5, 1.0})
        for (double p : {0.3, 0.5}) EXPECT_LE(factorized_on_cheap_residual(factorized_symmetry(SiteRep::su11(k, p), 40), 40), 1e-8);
}

TEST(Factorized, WithoutDiagonalIsLoweringTimesRaising) {
    const SiteRep r = SiteRep::su11(1.0, 0.5);
    const auto F = factorized_symmetry(r, 10, false);
    // Lowering then raising: the intermediate sum stops at min(x,y).
    const QuadMatrix expect = exp_ladder_quad(1, Ladder::Lower, r, 11) * exp_ladder_quad(quad(r.p), Ladder::Raise, r, 11);
    for (int x = 0; x <= 10; ++x)
        for (int y = 0; y <= 10; ++y) EXPECT_LE(mixed_relative(F.real(x, y), expect(x, y)), 1e-30);
    EXPECT_GT(factorized_on_cheap_residual(F, 10), 1.0);
}

TEST(GeneratorCommutation, IdentityCommutes) {
    const auto L = range_generator(path_graph(3), SiteRep::su11(0.5, 0.5), 3);
    EXPECT_EQ(generator_commutation_defect(DenseOp::Identity(4, 4), L, 3), 0.0);
}

TEST(GeneratorCommutation, ExpLoweringOnSip) {
    const SiteRep r = SiteRep::su11(0.5, 0.5);
    const auto L = range_generator(path_graph(2), r, 2);
    EXPECT_LE(generator_commutation_defect(exp_ladder(1.0, Ladder::Lower, SiteSpace(r, 3)), L, 2), 1e-10);
}

TEST(GeneratorCommutation, UnitaryOnSepIsExact) {
    for (int two_j : {1, 2}) {
        const SiteRep r = SiteRep::su2(two_j, 0.3);
        const auto L = range_generator(path_graph(3), r, 3 * two_j);
        const Symmetry S = unitary_symmetry(r, 0.4, 1.1, 0);
        EXPECT_LE(generator_commutation_defect(S.block(two_j), L, 3 * two_j), 1e-12);
    }
}

TEST(GeneratorCommutation, CoproductSymmetriesOnAllProcesses) {
    for (const SiteRep& r : {SiteRep::su11(1.0, 0.3), SiteRep::su2(2, 0.5), SiteRep::heisenberg(0.7)})
        for (Ladder which : {Ladder::Raise, Ladder::Lower}) {
            const auto L = range_generator(triangle_graph(), r, r.bounded() ? 6 : 4);
            const int hi = r.bounded() ? 6 : 4;
            const DenseOp S = exp_ladder(0.6, which, SiteSpace(r, hi + 1));
            const Eigen::MatrixXcd A = lift_product(S, *L.space);
            EXPECT_LE(commutation_defect(A, L, hi) / std::max(1.0, max_abs(A) * max_abs(L.dense().cast<cplx>())),
                      1e-12)
                << r.label();
        }
}

TEST(Bch, CertifiedAtHalf) {
    for (double k : {0.5, 1.0}) {
        const auto rep = bch_defect(0.5, k);
        EXPECT_LE(rep.defect, 1e-10) << k;
        EXPECT_TRUE(rep.converged(1e-10)) << k;
    }
    const auto lit = bch_defect(0.3, 1.0, 320, 16, true);
    EXPECT_LE(std::max(lit.defect, 10 * lit.change), 1e-10);
}

TEST(Bch, RejectsBadP) { EXPECT_THROW(bch_defect(1.0, 1.0), domain_error); }

TEST(CommutationRemark, ExactEntrywise) {
    EXPECT_LE(commutation_remark_defect(0.5, 1.0, 40), 1e-12);
    EXPECT_LE(commutation_remark_defect(0.5, 0.5, 40), 1e-12);
    EXPECT_LE(commutation_remark_defect(0.3, 1.5, 30), 1e-12);
}

TEST(Corollary, Examples) {
    EXPECT_EQ(corollary_relation_defect(0.0, 2.0, 1.0, 10), 0.0);
    EXPECT_LE(corollary_relation_defect(1.0, 2.0, 1.0, 6), 1e-12);
    EXPECT_LE(corollary_relation_defect(-0.5, -1.0, 0.5, 10), 1e-12);
    EXPECT_THROW(corollary_relation_defect(1.0, 0.0, 1.0, 4), domain_error);
}

TEST(S1S2, BothFormsGiveMeixner) {
    const auto rep = s1_s2_equivalence_defect(0.5, 1.0);
    EXPECT_LE(rep.s1_vs_orthogonal, 1e-10);
    EXPECT_LE(rep.s1_vs_s2.defect, 1e-10);
    EXPECT_TRUE(rep.s1_vs_s2.converged(1e-9));
}
