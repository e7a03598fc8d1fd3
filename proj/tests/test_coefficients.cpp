// Framing and wave fibers, transports, and the wedge action.

#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "tropicore/coefficients.hpp"
#include "tropicore/examples.hpp"

using namespace tropicore;

TEST_CASE("framing fibers on the bundled curves")
{
    SECTION("tropical line vertex spans Z^2 in degree 1")
    {
        auto x = examples::line_r2();
        FiberCache fc(x);
        REQUIRE(fc.framing(0, 1).carrier.rank() == 2);
        REQUIRE(fc.framing(0, 1).carrier.basis == IntMatrix::identity(2));
        REQUIRE(fc.framing(0, 0).carrier.rank() == 1);
    }
    SECTION("nodal curve node has F_1 = Z^2 and W_1 = 0")
    {
        auto x = examples::nodal_genus2();
        FiberCache fc(x);
        REQUIRE(fc.framing(0, 1).carrier.rank() == 2);
        REQUIRE(fc.wave(0, 1).carrier.rank() == 0);
        REQUIRE(fc.wave(10, 1).carrier.rank() == 1);
        REQUIRE(fc.framing(10, 1).carrier.rank() == 1);
    }
    SECTION("projective line endpoint: F_1 = 0, W_1 of rank 1 with divisorial ideal")
    {
        auto x = examples::tp1();
        FiberCache fc(x);
        REQUIRE(fc.framing(1, 1).carrier.rank() == 0);
        const WaveFiber& w = fc.wave(1, 1);
        REQUIRE(w.carrier.rank() == 1);
        REQUIRE(w.divisorial_ideal.rank() == 1);
        REQUIRE(w.mobile_carrier.rank() == 0);
    }
}

TEST_CASE("iota transports")
{
    SECTION("edge fiber includes into the vertex fiber of the tropical line")
    {
        auto x = examples::line_r2();
        FiberCache fc(x);
        IntMatrix m = fc.iota_matrix(1, 0, 1);  // ray -> vertex
        REQUIRE(m.rows() == 2);
        REQUIRE(m.cols() == 1);
        REQUIRE(rank_of(m) == 1);
    }
    SECTION("infinite edge to its sedentary endpoint is the zero map in degree 1")
    {
        auto x = examples::tp1();
        FiberCache fc(x);
        IntMatrix m = fc.iota_matrix(3, 1, 1);
        REQUIRE(m.rows() == 0);  // endpoint fiber vanishes
        REQUIRE(m.cols() == 1);
    }
    SECTION("degree 0 is always the identity")
    {
        auto x = examples::elliptic(Rat(3));
        FiberCache fc(x);
        REQUIRE(fc.iota_matrix(3, 0, 0) == IntMatrix::identity(1));
    }
    SECTION("functoriality over two-step chains")
    {
        for (auto x : {examples::tp1xtp1(), examples::torus(Rat(3), Rat(3))}) {
            FiberCache fc(x);
            for (const auto& f : x.faces)
                for (int mid : x.subfaces(f.id))
                    for (int bot : x.subfaces(mid))
                        for (int p : {1, 2}) {
                            IntMatrix ab = fc.iota_matrix(f.id, mid, p);
                            IntMatrix bc = fc.iota_matrix(mid, bot, p);
                            IntMatrix ac = fc.iota_matrix(f.id, bot, p);
                            REQUIRE(bc * ab == ac);
                        }
        }
    }
}

TEST_CASE("fibers are chart independent")
{
    auto x = examples::torus(Rat(3), Rat(5));
    FiberCache fc(x);
    for (int fid : x.face_ids_of_dim(1)) {
        int rc = x.reference_chart(fid);
        // compute in another chart containing the face, transport back
        for (int v : x.face(fid).vertices) {
            if (v == rc) continue;
            if (!x.charts.count(v)) continue;
            LatticeBasis there = fc.framing_in(fid, 1, v);
            IntMatrix lam = fc.wedge_transport(v, rc, 1);
            std::vector<IntVec> moved;
            for (int i = 0; i < there.rank(); ++i) moved.push_back(lam.apply(there.basis.row(i)));
            REQUIRE(LatticeBasis::span(moved, 2) == fc.framing(fid, 1).carrier);
        }
    }
}

TEST_CASE("wedge action")
{
    auto x = examples::elliptic(Rat(3));
    FiberCache fc(x);
    SECTION("degree zero scales")
    {
        RatVec beta{Rat(5)};
        REQUIRE(fc.wedge_action(3, RatVec{Rat(1)}, 0, beta, 0) == beta);
    }
    SECTION("primitive direction wedges the unit of F_0 to the generator of F_1")
    {
        RatVec w = fc.ambient_wave(3, 1, RatVec{Rat(1)});
        RatVec out = fc.wedge_action(3, w, 1, RatVec{Rat(1)}, 0);
        REQUIRE(out.size() == 1);
        REQUIRE((out[0] == 1 || out[0] == -1));
    }
    SECTION("repeated direction kills the product")
    {
        RatVec w = fc.ambient_wave(3, 1, RatVec{Rat(1)});
        RatVec beta = fc.carrier_framing(3, 1, w);
        RatVec out = fc.wedge_action(3, w, 1, beta, 1);
        REQUIRE(is_zero(out));
    }
}

TEST_CASE("pi and iota are compatible under the wedge product")
{
    // iota(pi(alpha) ^ beta) = alpha ^ iota(beta) on adjacent face pairs
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> coin(-3, 3);
    for (auto x : {examples::elliptic(Rat(3)), examples::nodal_genus2(), examples::tp1(),
                   examples::torus(Rat(3), Rat(3))}) {
        FiberCache fc(x);
        for (const auto& f : x.faces)
            for (int sub : x.subfaces(f.id)) {
                // alpha in W_1(sub), beta in F_p(f)
                for (int p = 0; p + 1 <= x.dim(); ++p) {
                    const WaveFiber& wsub = fc.wave(sub, 1);
                    const CoefFiber& bf = fc.framing(f.id, p);
                    if (wsub.carrier.rank() == 0 || bf.carrier.rank() == 0) continue;
                    for (int trial = 0; trial < 4; ++trial) {
                        RatVec alpha(wsub.carrier.rank());
                        for (auto& c : alpha) c = coin(rng);
                        RatVec beta(bf.carrier.rank());
                        for (auto& c : beta) c = coin(rng);
                        if (!fc.divisible_by_divisorials(f.id, p, beta)) continue;
                        if (!fc.divisible_by_divisorials(sub, p, fc.iota_matrix(f.id, sub, p).apply(beta))) continue;
                        // left: push alpha up, wedge on f, then down
                        RatVec pia = fc.pi_matrix(sub, f.id, 1).apply(alpha);
                        RatVec left = fc.wedge_action(f.id, fc.ambient_wave(f.id, 1, pia), 1,
                                                      beta, p);
                        left = fc.iota_matrix(f.id, sub, p + 1).apply(left);
                        // right: push beta down, wedge on sub
                        RatVec ib = fc.iota_matrix(f.id, sub, p).apply(beta);
                        RatVec right = fc.wedge_action(sub, fc.ambient_wave(sub, 1, alpha), 1,
                                                       ib, p);
                        REQUIRE(left == right);
                    }
                }
            }
    }
}
