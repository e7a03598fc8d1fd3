// Matroids, Bergman fans, smoothness certificates.

#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "tropicore/examples.hpp"
#include "tropicore/matroid.hpp"

using namespace tropicore;

TEST_CASE("flats of small matroids")
{
    SECTION("U_{2,3}: flats are the empty set, singletons, and the ground set")
    {
        auto m = Matroid::uniform(2, 3);
        auto f = m.flats();
        REQUIRE(f == std::vector<int>{0, 1, 2, 4, 7});
    }
    SECTION("U_{1,2}: only the trivial flats")
    {
        auto m = Matroid::uniform(1, 2);
        REQUIRE(m.flats() == std::vector<int>{0, 3});
    }
    SECTION("broken submodularity is rejected")
    {
        // ground 2: r(01) = 2 but r(0) = r(1) = 0 violates monotone/cardinality
        std::vector<int> rk{0, 0, 0, 2};
        REQUIRE_THROWS_AS(Matroid(2, rk), InvalidRankFunction);
    }
    SECTION("flats are closed under intersection for all uniform matroids up to 6")
    {
        for (int n = 1; n <= 6; ++n)
            for (int r = 1; r <= n; ++r) {
                auto m = Matroid::uniform(r, n);
                auto fl = m.flats();
                std::set<int> fs(fl.begin(), fl.end());
                for (int a : fl)
                    for (int b : fl) REQUIRE(fs.count(a & b));
            }
    }
    SECTION("bases input reproduces the uniform rank function")
    {
        auto m = Matroid::from_bases(3, {{0, 1}, {0, 2}, {1, 2}});
        for (int mask = 0; mask < 8; ++mask)
            REQUIRE(m.rank(mask) == Matroid::uniform(2, 3).rank(mask));
    }
}

TEST_CASE("Bergman fans")
{
    SECTION("U_{2,3} gives the tropical line in R^2")
    {
        auto x = bergman_fan(Matroid::uniform(2, 3));
        REQUIRE(x.dim() == 1);
        REQUIRE(x.face_ids_of_dim(1).size() == 3);
        auto rep = x.validate();
        for (const auto& v : rep.violations) INFO(v.code << ": " << v.detail);
        REQUIRE(rep.ok());
        // ray set equals the tropical line's
        std::set<std::vector<std::string>> rays;
        for (int fid : x.face_ids_of_dim(1)) {
            std::vector<std::string> key;
            for (const auto& e : x.record(0, fid).generators[0]) key.push_back(e.str());
            rays.insert(key);
        }
        REQUIRE(rays == std::set<std::vector<std::string>>{
                            {"1", "0"}, {"0", "1"}, {"-1", "-1"}});
    }
    SECTION("U_{2,2}: two opposite rays in R^1")
    {
        auto x = bergman_fan(Matroid::uniform(2, 2));
        REQUIRE(x.face_ids_of_dim(1).size() == 2);
        REQUIRE(x.validate().ok());
    }
    SECTION("U_{3,4}: two-dimensional balanced fan with 10 rays and 12 cones")
    {
        auto x = bergman_fan(Matroid::uniform(3, 4));
        REQUIRE(x.dim() == 2);
        REQUIRE(x.face_ids_of_dim(1).size() == 10);  // 4 singleton + 6 pair flats
        REQUIRE(x.face_ids_of_dim(2).size() == 12);  // flags F1 < F2
        auto rep = x.validate();
        for (const auto& v : rep.violations) INFO(v.code << ": " << v.detail);
        REQUIRE(rep.ok());
    }
    SECTION("a loop blocks the construction")
    {
        std::vector<int> rk{0, 0, 1, 1};  // element 0 is a loop
        REQUIRE_THROWS_AS(bergman_fan(Matroid(2, rk)), LooplessRequired);
    }
    SECTION("full-dimensional uniform fans are complete under point sampling")
    {
        std::mt19937 rng(99);
        std::uniform_int_distribution<int> num(-40, 40);
        for (auto m : {Matroid::uniform(2, 2), Matroid::uniform(3, 3)}) {
            auto x = bergman_fan(m);
            int dim = m.ground_size() - 1;
            for (int trial = 0; trial < 200; ++trial) {
                RatVec p(dim);
                for (auto& c : p) c = Rat(num(rng), 7);
                bool covered = false;
                for (int fid : x.face_ids_of_dim(dim)) {
                    const auto& gens = x.record(0, fid).generators;
                    std::vector<RatVec> rows;
                    for (const auto& g : gens) rows.push_back(to_rat(g));
                    auto sol = solve_in_span(rows, p);
                    if (!sol) continue;
                    bool nonneg = true;
                    for (const auto& c : *sol)
                        if (c < 0) nonneg = false;
                    if (nonneg) { covered = true; break; }
                }
                REQUIRE(covered);
            }
        }
    }
}

TEST_CASE("codimension-1 smoothness certificates")
{
    SECTION("tropical line vertex passes: 3 vectors of rank 2")
    {
        auto x = examples::line_r2();
        auto cert = codim1_smoothness_certificate(x, 0);
        REQUIRE(cert.adjacent_facets == 3);
        REQUIRE(cert.relation_rank == 2);
        REQUIRE(cert.passes);
    }
    SECTION("the nodal-curve node fails: 4 vectors with 2 independent relations")
    {
        auto x = examples::nodal_genus2();
        auto cert = codim1_smoothness_certificate(x, 0);
        REQUIRE(cert.adjacent_facets == 4);
        REQUIRE(cert.relation_rank == 2);
        REQUIRE(cert.balanced);
        REQUIRE_FALSE(cert.passes);
    }
    SECTION("interior ray of the U_{3,4} fan passes")
    {
        auto x = bergman_fan(Matroid::uniform(3, 4));
        for (int fid : x.face_ids_of_dim(1)) {
            auto cert = codim1_smoothness_certificate(x, fid);
            REQUIRE(cert.passes);
        }
    }
    SECTION("dimension precondition")
    {
        auto x = bergman_fan(Matroid::uniform(3, 4));
        REQUIRE_THROWS_AS(codim1_smoothness_certificate(x, 0), NotCodimOne);
    }
}
