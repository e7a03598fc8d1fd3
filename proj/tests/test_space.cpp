// Structural tests for the tropical space model on the bundled examples.

#include <catch2/catch_amalgamated.hpp>

#include "tropicore/examples.hpp"

using namespace tropicore;

TEST_CASE("tropical line in R^2 validates and is balanced")
{
    auto x = examples::line_r2();
    auto rep = x.validate();
    for (const auto& v : rep.violations) INFO(v.code << ": " << v.detail);
    REQUIRE(rep.ok());
    REQUIRE_FALSE(x.compact());

    SECTION("missing ray breaks balancing")
    {
        auto bad = examples::line_r2(false);
        auto r = bad.validate();
        bool balancing = false;
        for (const auto& v : r.violations)
            if (v.code == "balancing") balancing = true;
        REQUIRE(balancing);
    }

    SECTION("tangent fibers at the vertex: T rank 2, W rank 0")
    {
        REQUIRE(x.tangent_lattice(0).rank() == 0);  // the vertex itself spans nothing
        // T of the star is probed through the ray faces
        REQUIRE(x.tangent_lattice(1).rank() == 1);
        REQUIRE(x.wave_lattice(0).rank() == 0);
        REQUIRE(x.divisorial_lattice(0).rank() == 0);
    }
}

TEST_CASE("circle of length l")
{
    auto x = examples::elliptic(Rat(3));
    auto rep = x.validate();
    for (const auto& v : rep.violations) INFO(v.code << ": " << v.detail);
    REQUIRE(rep.ok());
    REQUIRE(x.compact());
    REQUIRE(x.dim() == 1);

    SECTION("interior edge of a curve: T rank 1, W rank 1, no divisorial part")
    {
        REQUIRE(x.tangent_lattice(3).rank() == 1);
        REQUIRE(x.wave_lattice(3).rank() == 1);
        REQUIRE(x.divisorial_lattice(3).rank() == 0);
    }
    SECTION("vertices lie in the one-dimensional stratum (wave rank 1)")
    {
        REQUIRE(x.wave_lattice(0).rank() == 1);
        REQUIRE(x.stratum_dim(x.stratum_of(0)) == 1);
    }
    SECTION("one segment subdivides into 2 barycentric simplices")
    {
        REQUIRE(x.cell_subdivision(3).size() == 2);
        REQUIRE(x.bar_simplices(1).size() == 6);
        REQUIRE(x.bar_simplices(0).size() == 6);  // 3 vertices + 3 edge barycenters
    }
    SECTION("parent and family of a mobile face is trivial")
    {
        REQUIRE(x.parent_of(0) == 0);
        REQUIRE(x.family_of(0) == std::vector<int>{0});
    }
}

TEST_CASE("nodal genus-2 curve")
{
    auto x = examples::nodal_genus2();
    auto rep = x.validate();
    for (const auto& v : rep.violations) INFO(v.code << ": " << v.detail);
    REQUIRE(rep.ok());
    REQUIRE(x.compact());

    SECTION("wave space vanishes at the node, is a line elsewhere")
    {
        REQUIRE(x.wave_lattice(0).rank() == 0);
        REQUIRE(x.wave_lattice(1).rank() == 1);
        REQUIRE(x.wave_lattice(10).rank() == 1);
    }
    SECTION("the node is its own stratum")
    {
        REQUIRE(x.stratum_dim(x.stratum_of(0)) == 0);
        REQUIRE(x.stratum_dim(x.stratum_of(10)) == 1);
    }
}

TEST_CASE("projective line")
{
    auto x = examples::tp1();
    auto rep = x.validate();
    for (const auto& v : rep.violations) INFO(v.code << ": " << v.detail);
    REQUIRE(rep.ok());
    REQUIRE(x.compact());

    SECTION("endpoint tangent data: T rank 0, W rank 1 with divisorial rank 1")
    {
        REQUIRE(x.tangent_lattice(1).rank() == 0);
        REQUIRE(x.wave_lattice(1).rank() == 1);
        REQUIRE(x.divisorial_lattice(1).rank() == 1);
    }
    SECTION("endpoint family has two members; parent is the edge")
    {
        REQUIRE(x.parent_of(1) == 3);
        auto fam = x.family_of(3);
        REQUIRE(fam.size() == 2);  // the edge and its endpoint
    }
    SECTION("two barycentric segments; endpoint barycenters are the endpoints")
    {
        auto simp = x.bar_simplices(1);
        REQUIRE(simp.size() == 2);
        REQUIRE(x.barycenter_carrier(3) == 1);
        REQUIRE(x.barycenter_carrier(4) == 2);
        // proxy of the infinite edge's barycenter is the mobile vertex
        RatVec y = x.mobile_proxy(3, 1);
        REQUIRE(y == RatVec{0});
    }
    SECTION("infinite faces are flagged infinite")
    {
        REQUIRE_FALSE(x.face(3).finite);
        REQUIRE(x.face(1).finite);
    }
}

TEST_CASE("flat torus as a product of circles")
{
    auto x = examples::torus(Rat(3), Rat(3));
    auto rep = x.validate();
    for (const auto& v : rep.violations) INFO(v.code << ": " << v.detail);
    REQUIRE(rep.ok());
    REQUIRE(x.compact());
    REQUIRE(x.dim() == 2);
    REQUIRE(x.face_ids_of_dim(0).size() == 9);
    REQUIRE(x.face_ids_of_dim(1).size() == 18);
    REQUIRE(x.face_ids_of_dim(2).size() == 9);

    SECTION("single stratum of dimension 2")
    {
        for (int fid : x.face_ids_of_dim(0)) {
            REQUIRE(x.wave_lattice(fid).rank() == 2);
            REQUIRE(x.stratum_dim(x.stratum_of(fid)) == 2);
        }
    }
    SECTION("squares subdivide into 8 barycentric triangles")
    {
        int sq = x.face_ids_of_dim(2).front();
        REQUIRE(x.cell_subdivision(sq).size() == 8);
    }
}

TEST_CASE("product of two projective lines")
{
    auto x = examples::tp1xtp1();
    auto rep = x.validate();
    for (const auto& v : rep.violations) INFO(v.code << ": " << v.detail);
    REQUIRE(rep.ok());
    REQUIRE(x.compact());
    REQUIRE(x.dim() == 2);

    SECTION("face counts: 9 vertices, 12 edges, 4 squares")
    {
        REQUIRE(x.face_ids_of_dim(0).size() == 9);
        REQUIRE(x.face_ids_of_dim(1).size() == 12);
        REQUIRE(x.face_ids_of_dim(2).size() == 4);
    }
    SECTION("corner families have four members")
    {
        // a sedentarity-2 corner: family of its parent 2-cell has 2^2 members
        for (int fid : x.face_ids_of_dim(0)) {
            if (x.face(fid).sedentarity.size() == 2) {
                int par = x.parent_of(fid);
                REQUIRE(x.face(par).dim == 2);
                REQUIRE(x.family_of(par).size() == 4);
            }
        }
    }
    SECTION("mobile vertex sits in the big mobile stratum")
    {
        // the unique mobile vertex has wave rank 2
        for (int fid : x.face_ids_of_dim(0))
            if (x.face(fid).sedentarity.empty()) REQUIRE(x.wave_lattice(fid).rank() == 2);
    }
}
