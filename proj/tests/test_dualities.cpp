#include "duality_lab/dualities.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace duality_lab;

namespace {

std::vector<SiteRep> processes() {
    return {SiteRep::su11(0.5, 0.3), SiteRep::su11(1.0, 0.5), SiteRep::su2(1, 0.5), SiteRep::su2(2, 0.3),
            SiteRep::heisenberg(0.5)};
}

std::vector<SingleSiteDuality> families(const SiteRep& r) { return {cheap(r), classical(r), orthogonal(r)}; }

struct SectorPair {
    std::shared_ptr<const SectorSpace> sx, sy;
    RateMatrix Lx, Ly;
};

SectorPair sectors(const Graph& g, const SiteRep& r, int tx, int ty) {
    auto sx = std::make_shared<const SectorSpace>(enumerate_sector(g, r, tx));
    auto sy = std::make_shared<const SectorSpace>(enumerate_sector(g, r, ty));
    return {sx, sy, build_generator(sx), build_generator(sy)};
}

double defect(const SingleSiteDuality& d, const Graph& g, int tx, int ty) {
    const auto s = sectors(g, d.rep, tx, ty);
    return duality_defect_scaled(s.Lx, duality_matrix(d, *s.sx, *s.sy), s.Ly);
}

}  // namespace

TEST(Cheap, Examples) {
    EXPECT_NEAR(cheap(SiteRep::su11(0.5, 0.5))(2, 2).real(), 4.0, 1e-14);
    EXPECT_NEAR(cheap(SiteRep::heisenberg(1.0))(3, 3).real(), 6.0, 1e-14);
    EXPECT_EQ(cheap(SiteRep::su2(2, 0.3))(1, 2), cplx(0.0));
}

TEST(Classical, Examples) {
    EXPECT_NEAR(classical(SiteRep::su11(0.5, 0.5))(2, 2).real(), 4.0, 1e-14);
    EXPECT_EQ(classical(SiteRep::su11(0.5, 0.5))(1, 2), cplx(0.0));
    EXPECT_NEAR(classical(SiteRep::heisenberg(1.0))(3, 1).real(), 3.0, 1e-14);
}

TEST(ClassicalLambda, Examples) {
    const SiteRep r = SiteRep::su11(0.5, 0.4);
    EXPECT_NEAR(classical_lambda(r, -1.0)(1, 1).real(), -1.0, 1e-15);
    EXPECT_EQ(classical_lambda(r, -1.0)(0, 1), cplx(0.0));
    const auto a = classical_lambda(r, 1.0 / r.p), b = classical(r);
    for (int x = 0; x <= 10; ++x)
        for (int y = 0; y <= 10; ++y) EXPECT_LE(mixed_relative(a(x, y), b(x, y)), 1e-14);
    EXPECT_THROW(classical_lambda(SiteRep::su2(1, 0.5), 1.0), domain_error);
}

TEST(Orthogonal, Examples) {
    EXPECT_NEAR(std::abs(orthogonal(SiteRep::heisenberg(1.0))(1, 1)), 0.0, 1e-15);
    const SiteRep sip = SiteRep::su11(0.5, 0.3);
    const cplx c = std::pow(cplx(sip.p - 1.0), sip.k);
    for (int x = 0; x <= 6; ++x) EXPECT_LE(std::abs(orthogonal(sip)(x, 0) - c), 1e-15);
    EXPECT_NEAR(std::abs(orthogonal(SiteRep::su2(2, 0.5))(1, 1)), 0.0, 1e-15);
}

TEST(Orthogonal, OutOfRangeOccupationThrows) {
    EXPECT_THROW(orthogonal(SiteRep::su2(2, 0.5))(3, 0), domain_error);
    EXPECT_THROW(cheap(SiteRep::su11(1.0, 0.5))(-1, 0), domain_error);
}

TEST(Triangularity, ClassicalAndCheap) {
    for (const SiteRep& r : processes()) {
        const int top = r.bounded() ? r.two_j : 12;
        const auto cl = classical(r), ch = cheap(r);
        for (int x = 0; x <= top; ++x)
            for (int y = 0; y <= top; ++y) {
                if (y > x) { EXPECT_EQ(cl(x, y), cplx(0.0)); }
                if (y != x) { EXPECT_EQ(ch(x, y), cplx(0.0)); }
            }
    }
}

TEST(DualityMatrix, ProductEntry) {
    const SiteRep r = SiteRep::su11(0.5, 0.5);
    const auto d = classical(r);
    const auto sx = enumerate_sector(path_graph(2), r, 2), sy = enumerate_sector(path_graph(2), r, 1);
    const auto D = duality_matrix(d, sx, sy);
    EXPECT_EQ(D(sx.find({1, 1}), sy.find({1, 0})), d(1, 1) * d(1, 0));
}

TEST(DualityMatrix, SingleVertexIsSingleSite) {
    const SiteRep r = SiteRep::heisenberg(0.7);
    const auto d = orthogonal(r);
    const Graph g(1, {});
    for (int tx = 0; tx <= 4; ++tx)
        for (int ty = 0; ty <= 4; ++ty) {
            const auto D = duality_matrix(d, enumerate_sector(g, r, tx), enumerate_sector(g, r, ty));
            EXPECT_EQ(D(0, 0), d(tx, ty));
        }
}

TEST(DualityMatrix, CheapIsDiagonalOnOneSector) {
    const SiteRep r = SiteRep::su11(1.0, 0.3);
    const auto s = enumerate_sector(triangle_graph(), r, 3);
    const auto D = duality_matrix(cheap(r), s, s);
    for (int a = 0; a < s.size(); ++a)
        for (int b = 0; b < s.size(); ++b)
            if (a != b) { EXPECT_EQ(D(a, b), cplx(0.0)); }
}

TEST(DualityDefect, Examples) {
    EXPECT_LE(defect(classical(SiteRep::su2(1, 0.5)), path_graph(3), 2, 1), 1e-12);
    EXPECT_LE(defect(orthogonal(SiteRep::su11(0.5, 0.5)), path_graph(2), 2, 2), 1e-12);
    const SiteRep r = SiteRep::su11(0.5, 0.5);
    const auto s = sectors(Graph(2, {}), r, 2, 1);
    EXPECT_EQ(duality_defect(s.Lx, duality_matrix(classical(r), *s.sx, *s.sy), s.Ly), 0.0);
}

// Every family, every process, graphs up to four vertices, totals up to five.
TEST(DualityDefect, AllFamiliesAllSectors) {
    for (const SiteRep& r : processes())
        for (const auto& d : families(r))
            for (const Graph& g : {path_graph(2), path_graph(3), triangle_graph(), path_graph(4), complete_graph(4)})
                for (int tx = 0; tx <= 5; ++tx)
                    for (int ty = 0; ty <= 5; ++ty) {
                        if (r.bounded() && std::max(tx, ty) > r.two_j * g.n_vertices) continue;
                        EXPECT_LE(defect(d, g, tx, ty), 1e-12)
                            << r.label() << ' ' << family_name(d.family) << " n=" << g.n_vertices << " totals "
                            << tx << ',' << ty;
                    }
}

TEST(DualityDefect, PerturbedGeneratorIsDetected) {
    const SiteRep r = SiteRep::su11(0.5, 0.5);
    const auto s = sectors(path_graph(3), r, 2, 2);
    const auto D = duality_matrix(classical(r), *s.sx, *s.sy);
    EXPECT_GT(duality_defect_scaled(perturb_rate(s.Lx, 1.01), D, s.Ly), 1e-4);
}

TEST(EquivalenceRescale, TrivialFactorsAreIdentity) {
    const SiteRep r = SiteRep::su11(1.0, 0.3);
    const auto sx = enumerate_sector(path_graph(3), r, 3), sy = enumerate_sector(path_graph(3), r, 2);
    const auto D = duality_matrix(classical(r), sx, sy);
    EXPECT_EQ(equivalence_rescale(D, sx, sy, 1.0, 1.0), D);
    EXPECT_THROW(equivalence_rescale(D, sx, sy, 0.0, 1.0), domain_error);
}

TEST(EquivalenceRescale, StaysADuality) {
    struct Case {
        SingleSiteDuality d;
        double c, b;
    };
    const SiteRep sip = SiteRep::su11(0.5, 0.3), irw = SiteRep::heisenberg(0.5);
    for (const Case& k : {Case{classical(sip), sip.p, 1.0}, Case{cheap(irw), 3.0, 2.0},
                          Case{orthogonal(sip), 1.7, 0.6}})
        for (int tx = 0; tx <= 4; ++tx)
            for (int ty = 0; ty <= 4; ++ty) {
                const auto s = sectors(path_graph(3), k.d.rep, tx, ty);
                const auto D = equivalence_rescale(duality_matrix(k.d, *s.sx, *s.sy), *s.sx, *s.sy, k.c, k.b);
                EXPECT_LE(duality_defect_scaled(s.Lx, D, s.Ly), 1e-10);
            }
}

// Orthogonality of the orthogonal family with the cheap norm on the diagonal.
TEST(Orthogonality, AllProcesses) {
    for (const SiteRep& r : processes()) {
        const auto rep = orthogonality_defect(r, 5);
        EXPECT_LE(rep.defect, r.bounded() ? 1e-12 : 1e-8) << r.label();
        EXPECT_LE(rep.change, 1e-9) << r.label();
    }
}

// Against a direct double-precision sum, independently of the quad path.
TEST(Orthogonality, DirectSumSip) {
    const SiteRep r = SiteRep::su11(1.0, 0.5);
    const auto d = orthogonal(r);
    for (int y = 0; y <= 3; ++y)
        for (int yp = 0; yp <= 3; ++yp) {
            cplx acc = 0.0;
            for (int x = 0; x <= 300; ++x) acc += d(x, y) * std::conj(d(x, yp)) * weight(r, x);
            const double norm = cheap_diagonal(r, y) * cheap_diagonal(r, y) * weight(r, y);
            EXPECT_NEAR(std::abs(acc - (y == yp ? norm : 0.0)), 0.0, 1e-9 * std::max(1.0, norm));
        }
}

TEST(ScalarProduct, FiniteAndCertified) {
    const auto geo = scalar_product([](int) { return 1.0; }, [](int) { return 1.0; },
                                    [](int z) { return std::pow(0.5, z); }, -1, 1e-14);
    EXPECT_TRUE(geo.converged);
    EXPECT_NEAR(geo.value.real(), 2.0, 1e-13);
    const auto fin = scalar_product([](int z) { return double(z); }, [](int) { return 1.0; },
                                    [](int) { return 1.0; }, 4);
    EXPECT_EQ(fin.value, cplx(10.0));
    EXPECT_EQ(fin.terms, 5);
}

// <d(x,.), d(y,.)>_mu of two self-dualities is again a self-duality.
TEST(ScalarProduct, OfSelfDualitiesIsSelfDuality) {
    for (const SiteRep& r : {SiteRep::su11(0.5, 0.3), SiteRep::su11(1.0, 0.5)}) {
        const auto cl = classical(r);
        const auto F = scalar_product_duality(cl, cl, [&](int z) { return weight(r, z); }, true);
        const SingleSiteDuality d{r, Family::Classical, 0.0, [F](int x, int y) { return F(x, y).value; }};
        for (int tx = 0; tx <= 4; ++tx)
            for (int ty = 0; ty <= 4; ++ty) EXPECT_LE(defect(d, path_graph(3), tx, ty), 1e-10);
    }
}

// The single-term corners of the construction.
TEST(ScalarProduct, EmptyIndexGivesOne) {
    const SiteRep r = SiteRep::su11(0.5, 0.3);
    const auto d = classical(r);
    const auto F = scalar_product_duality(d, d, [&](int z) { return mu_unnormalized(r.k, r.p, z); }, true);
    for (int x = 0; x <= 6; ++x) {
        EXPECT_EQ(F(x, 0).value, cplx(1.0));
        EXPECT_EQ(F(0, x).value, cplx(1.0));
    }
}

TEST(ScalarProduct, LaguerreConstruction) {
    for (double k : {0.5, 1.0})
        for (double x : {0.5, 1.0, 2.0})
            for (int y = 0; y <= 6; ++y) {
                const SiteRep r = SiteRep::su11(k, 0.5);
                const auto d1 = classical(r);
                auto d2 = [&](int z) {
                    double v = 1.0;
                    for (int i = 0; i < z; ++i) v *= -x / (2.0 * k + i);
                    return v;
                };
                const auto s = scalar_product(d2, [&](int z) { return d1(y, z); },
                                              [&](int z) { return mu_unnormalized(k, r.p, z); }, -1);
                EXPECT_LE(mixed_relative(s.value, cplx(laguerre_1f1<double>(y, k, x))), 1e-10);
            }
}

TEST(Biorthogonality, Examples) {
    EXPECT_LE(biorthogonality_defect(0.5, 0.25, 1.0, 6), 1e-12);
    EXPECT_LE(biorthogonality_defect(0.4, 0.4, 0.5, 6), 1e-12);
    EXPECT_LE(biorthogonality_defect(0.3, 0.7, 1.5, 8), 1e-12);
    EXPECT_THROW(biorthogonality_defect(0.0, 0.5, 1.0, 3), domain_error);
}

TEST(BiorthogonalPair, ReductionAndBiorthogonality) {
    for (const SiteRep& r : processes()) {
        const double q = r.kind == Algebra::SU11 ? 0.25 : (r.kind == Algebra::SU2 ? 0.6 : 0.4);
        const auto rep = biorthogonal_pair_defect(r, q, r.bounded() ? r.two_j : 5);
        EXPECT_LE(rep.reduction, 1e-10) << r.label();
        EXPECT_LE(rep.biorthogonality, r.bounded() ? 1e-12 : 1e-8) << r.label();
    }
}

TEST(BiorthogonalPair, FirstColumnIsOne) {
    const detail::BiorthogonalKernel ker(SiteRep::su11(1.0, 0.5), 0.25);
    for (int x = 0; x <= 10; ++x) EXPECT_EQ(to_double(ker.D(x, 0)), 1.0);
}
