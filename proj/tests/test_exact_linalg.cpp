// Tests for the exact linear algebra core.

#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "tropicore/exact_linalg.hpp"

using namespace tropicore;

namespace {

IntMatrix make(const std::vector<std::vector<int>>& rows)
{
    IntMatrix m(int(rows.size()), rows.empty() ? 0 : int(rows[0].size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j) m(int(i), int(j)) = rows[i][j];
    return m;
}

std::mt19937 rng(20240811);

IntMatrix random_matrix(int rows, int cols, int lo = -4, int hi = 4)
{
    std::uniform_int_distribution<int> d(lo, hi);
    IntMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = d(rng);
    return m;
}

// Independent oracle for invariant factors: repeated gcd row/column reduction
// without tracking transforms, plus a final divisibility fix-up by pairwise
// gcd/lcm of the diagonal.
std::vector<Int> snf_oracle(IntMatrix a)
{
    int t = 0;
    int limit = std::min(a.rows(), a.cols());
    while (t < limit) {
        int pi = -1, pj = -1;
        for (int i = t; i < a.rows(); ++i)
            for (int j = t; j < a.cols(); ++j)
                if (a(i, j) != 0 && (pi == -1 || abs(a(i, j)) < abs(a(pi, pj)))) { pi = i; pj = j; }
        if (pi == -1) break;
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);
        bool reduced = true;
        for (int i = t + 1; i < a.rows(); ++i)
            if (a(i, t) % a(t, t) != 0) reduced = false;
        for (int j = t + 1; j < a.cols(); ++j)
            if (a(t, j) % a(t, t) != 0) reduced = false;
        for (int i = t + 1; i < a.rows(); ++i) a.add_row(i, t, -(a(i, t) / a(t, t)));
        for (int j = t + 1; j < a.cols(); ++j) a.add_col(j, t, -(a(t, j) / a(t, t)));
        if (!reduced) continue;
        bool clear = true;
        for (int i = t + 1; i < a.rows(); ++i)
            if (a(i, t) != 0) clear = false;
        for (int j = t + 1; j < a.cols(); ++j)
            if (a(t, j) != 0) clear = false;
        if (!clear) continue;
        ++t;
    }
    std::vector<Int> d;
    for (int i = 0; i < t; ++i) d.push_back(abs(a(i, i)));
    for (size_t i = 0; i < d.size(); ++i)
        for (size_t j = i + 1; j < d.size(); ++j) {
            Int g = gcd(d[i], d[j]);
            Int l = (g == 0) ? Int(0) : d[i] / g * d[j];
            d[i] = g;
            d[j] = l;
        }
    return d;
}

}  // namespace

TEST_CASE("smith normal form on pinned examples")
{
    SECTION("diag(2,3) has invariant factors (1,6)")
    {
        auto s = smith_normal_form(make({{2, 0}, {0, 3}}));
        REQUIRE(s.invariant_factors == std::vector<Int>{1, 6});
    }
    SECTION("zero 2x3 matrix has zero D")
    {
        auto s = smith_normal_form(make({{0, 0, 0}, {0, 0, 0}}));
        REQUIRE(s.rank == 0);
        REQUIRE(s.d.is_zero());
    }
    SECTION("[[2,4],[6,8]] has invariant factors (2,4)")
    {
        IntMatrix a = make({{2, 4}, {6, 8}});
        auto s = smith_normal_form(a);
        REQUIRE(s.invariant_factors == snf_oracle(a));
        REQUIRE(s.invariant_factors == std::vector<Int>{2, 4});
    }
    SECTION("empty matrix")
    {
        auto s = smith_normal_form(IntMatrix(0, 0));
        REQUIRE(s.rank == 0);
    }
}

TEST_CASE("smith decomposition properties on random matrices")
{
    for (int trial = 0; trial < 40; ++trial) {
        IntMatrix a = random_matrix(2 + trial % 4, 2 + (trial / 2) % 4);
        auto s = smith_normal_form(a);
        REQUIRE(s.u * a * s.v == s.d);
        REQUIRE(abs(det(s.u)) == 1);
        REQUIRE(abs(det(s.v)) == 1);
        for (size_t i = 0; i + 1 < s.invariant_factors.size(); ++i) {
            REQUIRE(s.invariant_factors[i] >= 0);
            REQUIRE(s.invariant_factors[i + 1] % s.invariant_factors[i] == 0);
        }
        // reconstruct A = U^-1 D V^-1
        REQUIRE(unimodular_inverse(s.u) * s.d * unimodular_inverse(s.v) == a);
        REQUIRE(s.invariant_factors == snf_oracle(a));
    }
}

TEST_CASE("hermite form is canonical for the generated lattice")
{
    SECTION("{(1,0),(0,1),(-1,-1)} spans Z^2")
    {
        auto l = saturate_and_basis({{Int(1), Int(0)}, {Int(0), Int(1)}, {Int(-1), Int(-1)}}, 2);
        REQUIRE(l.basis == IntMatrix::identity(2));
    }
    SECTION("empty generating set")
    {
        auto l = saturate_and_basis({}, 3);
        REQUIRE(l.rank() == 0);
    }
    SECTION("{(2,0),(0,2),(2,2)} has basis {(2,0),(0,2)}")
    {
        auto l = saturate_and_basis({{Int(2), Int(0)}, {Int(0), Int(2)}, {Int(2), Int(2)}}, 2);
        REQUIRE(l.basis == make({{2, 0}, {0, 2}}));
        auto sat = saturate(l);
        REQUIRE(sat.basis == IntMatrix::identity(2));
    }
    SECTION("row order of generators does not matter")
    {
        for (int trial = 0; trial < 20; ++trial) {
            IntMatrix a = random_matrix(4, 3);
            std::vector<IntVec> rows;
            for (int i = 0; i < 4; ++i) rows.push_back(a.row(i));
            auto l1 = LatticeBasis::span(rows, 3);
            std::shuffle(rows.begin(), rows.end(), rng);
            auto l2 = LatticeBasis::span(rows, 3);
            REQUIRE(l1 == l2);
        }
    }
}

TEST_CASE("homology of a pair")
{
    SECTION("Z/2 from multiplication by 2")
    {
        auto h = homology_of_pair(make({{0}}), make({{2}}));
        REQUIRE(h.betti == 0);
        REQUIRE(h.torsion == std::vector<Int>{2});
    }
    SECTION("identity case: both maps zero on rank 3")
    {
        auto h = homology_of_pair(IntMatrix(1, 3), IntMatrix(3, 1));
        REQUIRE(h.betti == 3);
        REQUIRE(h.torsion.empty());
    }
    SECTION("circle with 3 edges and 3 vertices, constant Z coefficients")
    {
        // d_1: edges -> vertices, edge i goes from v_i to v_{i+1}
        IntMatrix d1 = make({{-1, 0, 1}, {1, -1, 0}, {0, 1, -1}});
        auto h1 = homology_of_pair(IntMatrix(0, 3), d1);  // wait: H_1 = ker d1 / 0
        REQUIRE(h1.betti == 1);
        auto h0 = homology_of_pair(IntMatrix(0, 3), d1);
        REQUIRE(h0.betti == 1);
        // H_1 with d_out = d1, d_in = 0
        auto top = homology_of_pair(d1, IntMatrix(3, 0));
        REQUIRE(top.betti == 1);
        REQUIRE(top.torsion.empty());
    }
    SECTION("chain complex of a 2-simplex has homology only in degree 0")
    {
        // faces: 3 vertices, 3 edges, 1 triangle (standard signs)
        IntMatrix d1 = make({{-1, -1, 0}, {1, 0, -1}, {0, 1, 1}});
        IntMatrix d2 = make({{1}, {-1}, {1}});
        REQUIRE((d1 * d2).is_zero());
        auto h0 = homology_of_pair(IntMatrix(0, 3), d1);
        REQUIRE(h0.betti == 1);
        auto h1 = homology_of_pair(d1, d2);
        REQUIRE(h1.betti == 0);
        REQUIRE(h1.torsion.empty());
        auto h2 = homology_of_pair(d2, IntMatrix(1, 0));
        REQUIRE(h2.betti == 0);
    }
    SECTION("nonzero composition is rejected")
    {
        REQUIRE_THROWS_AS(homology_of_pair(make({{1}}), make({{1}})), CompositionNonzero);
    }
}

TEST_CASE("exterior powers")
{
    SECTION("k = 1 is the matrix itself")
    {
        IntMatrix a = random_matrix(3, 4);
        REQUIRE(exterior_power_map(a, 1) == a);
    }
    SECTION("top wedge of a 2x2 matrix is the determinant")
    {
        IntMatrix a = make({{3, 5}, {2, 4}});
        auto m = exterior_power_map(a, 2);
        REQUIRE(m.rows() == 1);
        REQUIRE(m(0, 0) == 2);
    }
    SECTION("identity is functorial")
    {
        REQUIRE(exterior_power_map(IntMatrix::identity(3), 2) == IntMatrix::identity(3));
    }
    SECTION("functoriality on random composable pairs")
    {
        for (int trial = 0; trial < 25; ++trial) {
            IntMatrix a = random_matrix(3, 3), b = random_matrix(3, 4);
            for (int k : {1, 2}) {
                REQUIRE(exterior_power_map(a * b, k) ==
                        exterior_power_map(a, k) * exterior_power_map(b, k));
            }
        }
    }
}

TEST_CASE("wedge coordinate algebra")
{
    // e0 ^ e1 in Q^3
    RatVec e0{1, 0, 0}, e1{0, 1, 0}, e2{0, 0, 1};
    auto w01 = wedge(e0, 1, e1, 1, 3);
    REQUIRE(w01 == RatVec{1, 0, 0});  // basis {01, 02, 12}
    auto w10 = wedge(e1, 1, e0, 1, 3);
    REQUIRE(w10 == RatVec{-1, 0, 0});
    auto w = wedge_of_vectors({e1, e2}, 3);
    REQUIRE(w == RatVec{0, 0, 1});
    // repeated factor vanishes
    REQUIRE(is_zero(wedge(e1, 1, e1, 1, 3)));
    // associativity against exterior_power_map: rows of Lambda^2(A) are wedges
    IntMatrix a = random_matrix(2, 3);
    auto lam = exterior_power_map(a, 2);
    auto direct = wedge(to_rat(a.row(0)), 1, to_rat(a.row(1)), 1, 3);
    for (int j = 0; j < lam.cols(); ++j) REQUIRE(Rat(lam(0, j)) == direct[j]);
}

TEST_CASE("kernel, saturation, quotients")
{
    SECTION("kernel of [[1,1,1]]")
    {
        auto k = kernel_int(make({{1, 1, 1}}));
        REQUIRE(k.rows() == 2);
        IntMatrix a = make({{1, 1, 1}});
        REQUIRE((a * k.transpose()).is_zero());
    }
    SECTION("span intersection of two planes in Q^3")
    {
        auto p1 = LatticeBasis::span({{Int(1), Int(0), Int(0)}, {Int(0), Int(1), Int(0)}}, 3);
        auto p2 = LatticeBasis::span({{Int(1), Int(0), Int(0)}, {Int(0), Int(0), Int(1)}}, 3);
        auto l = span_intersection(p1, p2);
        REQUIRE(l.rank() == 1);
        REQUIRE(l.contains({Int(1), Int(0), Int(0)}));
    }
    SECTION("quotient map kills the sublattice and has full rank")
    {
        auto s = LatticeBasis::span({{Int(2), Int(4), Int(0)}}, 3);
        auto q = quotient_map(s);
        REQUIRE(q.rows() == 2);
        IntVec img = q.apply(IntVec{Int(1), Int(2), Int(0)});
        REQUIRE((img == IntVec{Int(0), Int(0)}));
        REQUIRE(rank_of(q) == 2);
    }
}
