// Cellular and barycentric homology on the bundled examples, pinned to the
// published tables where they exist.

#include <catch2/catch_amalgamated.hpp>

#include "tropicore/examples.hpp"
#include "tropicore/homology.hpp"

using namespace tropicore;

namespace {

void expect_rank(const HomologyTable& t, int p, int q, int betti, bool torsion_free = true)
{
    INFO("p=" << p << " q=" << q);
    REQUIRE(t.entry[p][q].betti == betti);
    if (torsion_free) REQUIRE(t.entry[p][q].torsion.empty());
}

}  // namespace

TEST_CASE("circle homology")
{
    auto x = examples::elliptic(Rat(3));
    FiberCache fc(x);
    auto t = homology_table(fc, System::F);
    expect_rank(t, 0, 0, 1);
    expect_rank(t, 0, 1, 1);
    expect_rank(t, 1, 0, 1);
    expect_rank(t, 1, 1, 1);
    auto w = homology_table(fc, System::W);
    expect_rank(w, 0, 0, 1);
    expect_rank(w, 0, 1, 1);
    expect_rank(w, 1, 0, 1);
    expect_rank(w, 1, 1, 1);
    SECTION("barycentric ranks agree")
    {
        auto tb = homology_table(fc, System::F, true);
        for (int p = 0; p <= 1; ++p)
            for (int q = 0; q <= 1; ++q) {
                REQUIRE(tb.entry[p][q].betti == t.entry[p][q].betti);
                REQUIRE(tb.entry[p][q].torsion == t.entry[p][q].torsion);
            }
    }
}

TEST_CASE("nodal genus-2 curve reproduces the published table")
{
    auto x = examples::nodal_genus2();
    FiberCache fc(x);
    SECTION("framing homology")
    {
        auto t = homology_table(fc, System::F);
        expect_rank(t, 0, 0, 1);
        expect_rank(t, 1, 0, 1);
        expect_rank(t, 0, 1, 2);
        expect_rank(t, 1, 1, 1);
    }
    SECTION("wave cohomology")
    {
        auto w = homology_table(fc, System::W);
        expect_rank(w, 0, 0, 1);
        expect_rank(w, 1, 0, 0);
        expect_rank(w, 0, 1, 2);
        expect_rank(w, 1, 1, 2);
    }
    SECTION("framing cohomology ranks mirror homology over Q")
    {
        auto t = homology_table(fc, System::Fdual);
        expect_rank(t, 0, 0, 1, false);
        expect_rank(t, 0, 1, 2, false);
        expect_rank(t, 1, 1, 1, false);
    }
    SECTION("barycentric ranks agree with cellular for all systems")
    {
        for (System s : {System::F, System::Fdual, System::W, System::Wdual}) {
            auto a = homology_table(fc, s);
            auto b = homology_table(fc, s, true);
            for (int p = 0; p <= 1; ++p)
                for (int q = 0; q <= 1; ++q) REQUIRE(a.entry[p][q].betti == b.entry[p][q].betti);
        }
    }
}

TEST_CASE("projective line")
{
    auto x = examples::tp1();
    FiberCache fc(x);
    auto t = homology_table(fc, System::F);
    // contractible segment with a rank-one framing class in degree (1,1)
    expect_rank(t, 0, 0, 1);
    expect_rank(t, 0, 1, 0);
    expect_rank(t, 1, 1, 1);
    expect_rank(t, 1, 0, 0);
    SECTION("degree-1 framing complex has one generator and zero boundary")
    {
        auto c = cellular_complex(fc, System::F, 1);
        REQUIRE(c.total[1] == 2);  // two infinite edges, rank 1 each
        REQUIRE(c.total[0] == 1);  // only the mobile vertex carries F_1
        REQUIRE(c.homology_at(1).betti == 1);
    }
    SECTION("wave cohomology of the segment")
    {
        auto w = homology_table(fc, System::W);
        expect_rank(w, 0, 0, 1);
        expect_rank(w, 0, 1, 0);
        expect_rank(w, 1, 1, 0);
    }
}

TEST_CASE("flat torus")
{
    auto x = examples::torus(Rat(3), Rat(5));
    FiberCache fc(x);
    auto t = homology_table(fc, System::F);
    expect_rank(t, 0, 0, 1);
    expect_rank(t, 0, 1, 2);
    expect_rank(t, 0, 2, 1);
    expect_rank(t, 1, 0, 2);
    expect_rank(t, 1, 1, 4);
    expect_rank(t, 1, 2, 2);
    expect_rank(t, 2, 0, 1);
    expect_rank(t, 2, 1, 2);
    expect_rank(t, 2, 2, 1);
    SECTION("wave table matches over Q")
    {
        auto w = homology_table(fc, System::W);
        for (int p = 0; p <= 2; ++p)
            for (int q = 0; q <= 2; ++q) REQUIRE(w.entry[p][q].betti == t.entry[p][q].betti);
    }
}

TEST_CASE("product of projective lines has the expected diagonal")
{
    auto x = examples::tp1xtp1();
    FiberCache fc(x);
    auto t = homology_table(fc, System::F);
    expect_rank(t, 0, 0, 1);
    expect_rank(t, 1, 1, 2);
    expect_rank(t, 2, 2, 1);
    expect_rank(t, 0, 1, 0);
    expect_rank(t, 0, 2, 0);
    expect_rank(t, 1, 0, 0);
    expect_rank(t, 2, 0, 0);
    expect_rank(t, 2, 1, 0);
    expect_rank(t, 1, 2, 0);
    SECTION("barycentric agrees")
    {
        auto b = homology_table(fc, System::F, true);
        for (int p = 0; p <= 2; ++p)
            for (int q = 0; q <= 2; ++q) REQUIRE(b.entry[p][q].betti == t.entry[p][q].betti);
    }
}

TEST_CASE("straight classes")
{
    SECTION("the fundamental class of the circle generates H_{1,1}")
    {
        auto x = examples::elliptic(Rat(3));
        FiberCache fc(x);
        std::map<int, Int> w{{3, 1}, {4, 1}, {5, 1}};
        Chain z = straight_class(fc, w, 1);
        REQUIRE(z.terms.size() == 3);
        auto c = cellular_complex(fc, System::F, 1);
        auto basis = homology_basis(c, 1);
        RatVec cls = basis.class_of(c.assemble(1, z.terms));
        REQUIRE(cls.size() == 1);
        REQUIRE((cls[0] == 1 || cls[0] == -1));
    }
    SECTION("a single unbalanced edge is rejected")
    {
        auto x = examples::elliptic(Rat(3));
        FiberCache fc(x);
        std::map<int, Int> w{{3, 1}};
        REQUIRE_THROWS_AS(straight_class(fc, w, 1), NotBalanced);
    }
}

TEST_CASE("cowave chains")
{
    auto x = examples::elliptic(Rat(3));
    FiberCache fc(x);
    SECTION("dual-volume coweights on the closed curve are cobalanced")
    {
        std::map<int, Rat> cw{{3, 1}, {4, 1}, {5, 1}};
        auto [ch, flat] = cowave_chain(fc, cw, 1);
        REQUIRE(flat);
    }
    SECTION("a single open edge with nonzero coweight is not cobalanced")
    {
        std::map<int, Rat> cw{{3, 1}};
        auto [ch, flat] = cowave_chain(fc, cw, 1);
        REQUIRE_FALSE(flat);
    }
    SECTION("zero coweights are cobalanced")
    {
        std::map<int, Rat> cw{{3, 0}, {4, 0}};
        auto [ch, flat] = cowave_chain(fc, cw, 1);
        REQUIRE(flat);
        REQUIRE(ch.terms.empty());
    }
}
