/**
 * Exact integer and rational linear algebra: Hermite and Smith normal forms,
 * kernels, saturations, exterior powers and the wedge-coordinate algebra.
 *
 * Everything here works over arbitrary-precision integers; intermediate
 * entries of a normal-form reduction can exceed any fixed-width type even
 * for small inputs.
 */

#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "arith.hpp"

namespace tropicore {

struct CompositionNonzero : std::runtime_error
{
    CompositionNonzero() : std::runtime_error("d_out * d_in != 0") {}
};

// ---------------------------------------------------------------------------
// IntMatrix
// ---------------------------------------------------------------------------

class IntMatrix
{
  public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols, Int(0)) {}

    static IntMatrix identity(int n)
    {
        IntMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static IntMatrix from_rows(const std::vector<IntVec>& rows, int cols)
    {
        IntMatrix m(int(rows.size()), cols);
        for (size_t i = 0; i < rows.size(); ++i) {
            if (int(rows[i].size()) != cols) throw std::invalid_argument("ragged rows");
            for (int j = 0; j < cols; ++j) m(int(i), j) = rows[i][j];
        }
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Int& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    const Int& operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

    IntVec row(int i) const
    {
        IntVec r(cols_);
        for (int j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
        return r;
    }

    IntVec col(int j) const
    {
        IntVec c(rows_);
        for (int i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    bool operator==(const IntMatrix& o) const
    {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    bool is_zero() const
    {
        for (const auto& x : a_)
            if (x != 0) return false;
        return true;
    }

    IntMatrix transpose() const
    {
        IntMatrix t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    IntMatrix operator*(const IntMatrix& o) const
    {
        if (cols_ != o.rows_) throw std::invalid_argument("shape mismatch in matrix product");
        IntMatrix r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const Int& x = (*this)(i, k);
                if (x == 0) continue;
                for (int j = 0; j < o.cols_; ++j) r(i, j) += x * o(k, j);
            }
        return r;
    }

    IntVec apply(const IntVec& v) const
    {
        if (int(v.size()) != cols_) throw std::invalid_argument("shape mismatch in apply");
        IntVec r(rows_, Int(0));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
        return r;
    }

    RatVec apply(const RatVec& v) const
    {
        if (int(v.size()) != cols_) throw std::invalid_argument("shape mismatch in apply");
        RatVec r(rows_, Rat(0));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r[i] += Rat((*this)(i, j)) * v[j];
        return r;
    }

    void swap_rows(int i, int k)
    {
        for (int j = 0; j < cols_; ++j) std::swap((*this)(i, j), (*this)(k, j));
    }
    void swap_cols(int j, int l)
    {
        for (int i = 0; i < rows_; ++i) std::swap((*this)(i, j), (*this)(i, l));
    }
    // row i += c * row k
    void add_row(int i, int k, const Int& c)
    {
        for (int j = 0; j < cols_; ++j) (*this)(i, j) += c * (*this)(k, j);
    }
    void add_col(int j, int l, const Int& c)
    {
        for (int i = 0; i < rows_; ++i) (*this)(i, j) += c * (*this)(i, l);
    }
    void scale_row(int i, const Int& c)
    {
        for (int j = 0; j < cols_; ++j) (*this)(i, j) *= c;
    }

  private:
    int rows_, cols_;
    std::vector<Int> a_;
};

// ---------------------------------------------------------------------------
// Rational elimination: rank and linear solves
// ---------------------------------------------------------------------------

/// Row-reduces a dense rational matrix in place; returns the pivot columns.
inline std::vector<int> rref(std::vector<RatVec>& m)
{
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    size_t rows = m.size(), cols = m[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = r;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[r]);
        Rat inv = Rat(1) / m[r][c];
        for (size_t j = c; j < cols; ++j) m[r][j] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rat f = m[i][c];
            for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(int(c));
        ++r;
    }
    return pivots;
}

inline int rank_of(const std::vector<RatVec>& rows)
{
    auto m = rows;
    return int(rref(m).size());
}

inline int rank_of(const IntMatrix& a)
{
    std::vector<RatVec> m(a.rows());
    for (int i = 0; i < a.rows(); ++i) m[i] = to_rat(a.row(i));
    return rank_of(m);
}

/// Solves sum_i x_i * rows[i] = target over Q. Returns nullopt when the
/// target is outside the row span. When the rows are dependent the solution
/// with zeros on the non-pivot rows is returned.
inline std::optional<RatVec> solve_in_span(const std::vector<RatVec>& rows, const RatVec& target)
{
    size_t n = rows.size();
    size_t cols = target.size();
    // augmented system: columns are the rows (as vectors), rhs = target
    std::vector<RatVec> m(cols, RatVec(n + 1, Rat(0)));
    for (size_t j = 0; j < cols; ++j) {
        for (size_t i = 0; i < n; ++i) m[j][i] = rows[i][j];
        m[j][n] = target[j];
    }
    auto pivots = rref(m);
    RatVec x(n, Rat(0));
    for (size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] == int(n)) return std::nullopt;  // pivot in rhs column: inconsistent
        x[pivots[r]] = m[r][n];
    }
    return x;
}

// ---------------------------------------------------------------------------
// Hermite normal form (row style)
// ---------------------------------------------------------------------------

/**
 * Row-style HNF: returns H with the same row span over Z as A, where H has
 * its zero rows removed, pivots positive, pivot columns strictly increasing,
 * and entries above each pivot reduced into [0, pivot). This is the canonical
 * representative of the sublattice generated by the rows.
 */
inline IntMatrix hnf_rows(const IntMatrix& a_in)
{
    IntMatrix a = a_in;
    int rows = a.rows(), cols = a.cols();
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        // euclidean elimination in column c below row r
        while (true) {
            int piv = -1;
            for (int i = r; i < rows; ++i)
                if (a(i, c) != 0 && (piv == -1 || abs(a(i, c)) < abs(a(piv, c)))) piv = i;
            if (piv == -1) break;
            a.swap_rows(r, piv);
            bool clean = true;
            for (int i = r + 1; i < rows; ++i) {
                if (a(i, c) == 0) continue;
                Int q = a(i, c) / a(r, c);
                a.add_row(i, r, -q);
                if (a(i, c) != 0) clean = false;
            }
            if (clean) break;
        }
        if (a(r, c) == 0) continue;
        if (a(r, c) < 0) a.scale_row(r, Int(-1));
        for (int i = 0; i < r; ++i) {
            // reduce entries above the pivot into [0, pivot)
            Int q = a(i, c) / a(r, c);
            if (a(i, c) - q * a(r, c) < 0) q -= 1;
            if (q != 0) a.add_row(i, r, -q);
        }
        ++r;
    }
    IntMatrix h(r, cols);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < cols; ++j) h(i, j) = a(i, j);
    return h;
}

// ---------------------------------------------------------------------------
// Smith normal form
// ---------------------------------------------------------------------------

struct SmithDecomposition
{
    IntMatrix u, d, v;  // u * a * v = d
    int rank = 0;
    std::vector<Int> invariant_factors;  // the nonzero diagonal entries
};

/// U A V = D with U, V unimodular, D diagonal, d_i | d_{i+1}, d_i >= 0.
inline SmithDecomposition smith_normal_form(const IntMatrix& a_in)
{
    SmithDecomposition s;
    IntMatrix a = a_in;
    int rows = a.rows(), cols = a.cols();
    s.u = IntMatrix::identity(rows);
    s.v = IntMatrix::identity(cols);

    int t = 0;
    int limit = std::min(rows, cols);
    while (t < limit) {
        // locate a pivot of minimal absolute value in the remaining block
        int pi = -1, pj = -1;
        for (int i = t; i < rows; ++i)
            for (int j = t; j < cols; ++j)
                if (a(i, j) != 0 && (pi == -1 || abs(a(i, j)) < abs(a(pi, pj)))) { pi = i; pj = j; }
        if (pi == -1) break;
        a.swap_rows(t, pi); s.u.swap_rows(t, pi);
        a.swap_cols(t, pj); s.v.swap_cols(t, pj);

        bool again = true;
        while (again) {
            again = false;
            for (int i = t + 1; i < rows; ++i) {
                if (a(i, t) == 0) continue;
                Int q = a(i, t) / a(t, t);
                a.add_row(i, t, -q); s.u.add_row(i, t, -q);
                if (a(i, t) != 0) {
                    a.swap_rows(t, i); s.u.swap_rows(t, i);
                    again = true;
                }
            }
            for (int j = t + 1; j < cols; ++j) {
                if (a(t, j) == 0) continue;
                Int q = a(t, j) / a(t, t);
                a.add_col(j, t, -q); s.v.add_col(j, t, -q);
                if (a(t, j) != 0) {
                    a.swap_cols(t, j); s.v.swap_cols(t, j);
                    again = true;
                }
            }
        }
        // enforce divisibility of the remaining block by the pivot
        bool redo = false;
        for (int i = t + 1; i < rows && !redo; ++i)
            for (int j = t + 1; j < cols && !redo; ++j)
                if (a(i, j) % a(t, t) != 0) {
                    a.add_row(t, i, Int(1)); s.u.add_row(t, i, Int(1));
                    redo = true;
                }
        if (redo) continue;
        if (a(t, t) < 0) { a.scale_row(t, Int(-1)); s.u.scale_row(t, Int(-1)); }
        ++t;
    }
    s.d = a;
    s.rank = t;
    for (int i = 0; i < t; ++i) s.invariant_factors.push_back(a(i, i));
    return s;
}

/// Exact inverse of a unimodular integer matrix.
inline IntMatrix unimodular_inverse(const IntMatrix& m)
{
    int n = m.rows();
    if (m.cols() != n) throw std::invalid_argument("not square");
    std::vector<RatVec> aug(n, RatVec(2 * n, Rat(0)));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug[i][j] = Rat(m(i, j));
        aug[i][n + i] = 1;
    }
    auto piv = rref(aug);
    if (int(piv.size()) != n) throw std::invalid_argument("singular matrix");
    IntMatrix inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Rat& x = aug[i][n + j];
            if (den(x) != 1) throw std::invalid_argument("matrix is not unimodular");
            inv(i, j) = num(x);
        }
    return inv;
}

inline Int det(const IntMatrix& m)
{
    int n = m.rows();
    if (m.cols() != n) throw std::invalid_argument("det of non-square matrix");
    if (n == 0) return 1;
    // fraction-free Bareiss elimination
    IntMatrix a = m;
    Int sign = 1, prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a(k, k) == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (a(i, k) != 0) { piv = i; break; }
            if (piv == -1) return 0;
            a.swap_rows(k, piv);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

// ---------------------------------------------------------------------------
// Kernels and lattices
// ---------------------------------------------------------------------------

/**
 * Canonical basis (HNF rows) of the right kernel {x : A x = 0} inside Z^cols.
 * The kernel of an integer matrix is saturated by construction.
 */
inline IntMatrix kernel_int(const IntMatrix& a)
{
    // column-style reduction: find unimodular V with A V = H, kernel = zero
    // columns of H pulled back through V.
    IntMatrix h = a;
    IntMatrix v = IntMatrix::identity(a.cols());
    int rows = h.rows(), cols = h.cols();
    int r = 0;
    for (int i = 0; i < rows && r < cols; ++i) {
        while (true) {
            int piv = -1;
            for (int j = r; j < cols; ++j)
                if (h(i, j) != 0 && (piv == -1 || abs(h(i, j)) < abs(h(i, piv)))) piv = j;
            if (piv == -1) break;
            h.swap_cols(r, piv); v.swap_cols(r, piv);
            bool clean = true;
            for (int j = r + 1; j < cols; ++j) {
                if (h(i, j) == 0) continue;
                Int q = h(i, j) / h(i, r);
                h.add_col(j, r, -q); v.add_col(j, r, -q);
                if (h(i, j) != 0) clean = false;
            }
            if (clean) break;
        }
        if (h(i, r) != 0) ++r;
    }
    std::vector<IntVec> basis;
    for (int j = r; j < cols; ++j) basis.push_back(v.col(j));
    return hnf_rows(IntMatrix::from_rows(basis, a.cols()));
}

/**
 * A sublattice of Z^ambient stored by its canonical HNF row basis.
 * Structural equality of LatticeBasis values is equality of sublattices.
 */
struct LatticeBasis
{
    int ambient = 0;
    IntMatrix basis;  // HNF rows, one per basis vector

    LatticeBasis() = default;
    explicit LatticeBasis(int amb) : ambient(amb), basis(0, amb) {}

    static LatticeBasis span(const std::vector<IntVec>& gens, int ambient)
    {
        LatticeBasis l(ambient);
        if (!gens.empty()) l.basis = hnf_rows(IntMatrix::from_rows(gens, ambient));
        return l;
    }

    int rank() const { return basis.rows(); }

    std::vector<IntVec> vectors() const
    {
        std::vector<IntVec> v;
        for (int i = 0; i < basis.rows(); ++i) v.push_back(basis.row(i));
        return v;
    }

    bool operator==(const LatticeBasis& o) const
    {
        return ambient == o.ambient && basis == o.basis;
    }

    /// Rational coordinates of v in this basis, if v lies in the Q-span.
    std::optional<RatVec> coords_of(const RatVec& v) const
    {
        std::vector<RatVec> rows;
        for (int i = 0; i < basis.rows(); ++i) rows.push_back(to_rat(basis.row(i)));
        return solve_in_span(rows, v);
    }

    bool contains(const IntVec& v) const
    {
        auto c = coords_of(to_rat(v));
        if (!c) return false;
        for (const auto& x : *c)
            if (den(x) != 1) return false;
        return true;
    }

    bool spans_subspace_of(const LatticeBasis& o) const
    {
        for (int i = 0; i < basis.rows(); ++i)
            if (!o.coords_of(to_rat(basis.row(i)))) return false;
        return true;
    }
};

/// Rows spanning the integral orthogonal complement {x : x . r = 0 for all rows r}.
inline IntMatrix orthogonal_complement(const IntMatrix& rows)
{
    return kernel_int(rows);  // right kernel of the row matrix is the complement
}

/// Saturation (L tensor Q) intersect Z^n of the sublattice spanned by the rows.
inline LatticeBasis saturate(const LatticeBasis& l)
{
    LatticeBasis s(l.ambient);
    if (l.rank() == 0) return s;
    s.basis = kernel_int(orthogonal_complement(l.basis));
    return s;
}

/// Intersection of the Q-spans of two lattices, as a saturated lattice.
inline LatticeBasis span_intersection(const LatticeBasis& a, const LatticeBasis& b)
{
    if (a.ambient != b.ambient) throw std::invalid_argument("ambient mismatch");
    IntMatrix ca = orthogonal_complement(a.basis);
    IntMatrix cb = orthogonal_complement(b.basis);
    std::vector<IntVec> rows;
    for (int i = 0; i < ca.rows(); ++i) rows.push_back(ca.row(i));
    for (int i = 0; i < cb.rows(); ++i) rows.push_back(cb.row(i));
    LatticeBasis r(a.ambient);
    r.basis = kernel_int(IntMatrix::from_rows(rows, a.ambient));
    return r;
}

/**
 * Per the carrier convention, saturate_and_basis returns the generated
 * subgroup (not its saturation) unless `saturated` is set.
 */
inline LatticeBasis saturate_and_basis(const std::vector<IntVec>& vectors, int ambient,
                                       bool saturated = false)
{
    LatticeBasis l = LatticeBasis::span(vectors, ambient);
    return saturated ? saturate(l) : l;
}

/**
 * Projection data for the quotient Z^n / sat(S): `proj` maps Z^n onto
 * Z^(n-rank) coordinates of the quotient lattice.
 */
inline IntMatrix quotient_map(const LatticeBasis& s)
{
    if (s.rank() == 0) return IntMatrix::identity(s.ambient);
    // SNF of B^T: U B^T W = D; the last n-k rows of U give quotient coordinates.
    auto dec = smith_normal_form(s.basis.transpose());
    int n = s.ambient, k = dec.rank;
    IntMatrix q(n - k, n);
    for (int i = k; i < n; ++i)
        for (int j = 0; j < n; ++j) q(i - k, j) = dec.u(i, j);
    return q;
}

// ---------------------------------------------------------------------------
// Homology of a pair of composable boundary maps
// ---------------------------------------------------------------------------

struct HomologyGroup
{
    int betti = 0;
    std::vector<Int> torsion;  // invariant factors > 1
};

/**
 * H = ker(d_out) / im(d_in) for integer matrices with d_out * d_in = 0.
 * d_out maps the middle degree down, d_in maps into the middle degree.
 */
inline HomologyGroup homology_of_pair(const IntMatrix& d_out, const IntMatrix& d_in)
{
    if (d_out.cols() != d_in.rows()) throw std::invalid_argument("degree mismatch");
    if (!(d_out * d_in).is_zero()) throw CompositionNonzero();

    IntMatrix k = kernel_int(d_out);  // rows = basis of the saturated kernel
    int z = k.rows();
    HomologyGroup h;
    if (z == 0) return h;

    // express the image inside the kernel basis
    std::vector<RatVec> kernel_rows;
    for (int i = 0; i < z; ++i) kernel_rows.push_back(to_rat(k.row(i)));
    IntMatrix x(d_in.cols(), z);
    for (int j = 0; j < d_in.cols(); ++j) {
        auto c = solve_in_span(kernel_rows, to_rat(d_in.col(j)));
        if (!c) throw std::logic_error("image not contained in kernel");
        for (int i = 0; i < z; ++i) {
            if (den((*c)[i]) != 1) throw std::logic_error("non-integral kernel coordinates");
            x(j, i) = num((*c)[i]);
        }
    }
    auto dec = smith_normal_form(x);
    h.betti = z - dec.rank;
    for (const auto& d : dec.invariant_factors)
        if (d > 1) h.torsion.push_back(d);
    return h;
}

// ---------------------------------------------------------------------------
// Exterior algebra in lexicographic wedge coordinates
// ---------------------------------------------------------------------------

/// All k-subsets of {0..n-1} in lexicographic order.
inline std::vector<std::vector<int>> subsets_lex(int n, int k)
{
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n) return out;
    std::vector<int> s(k);
    for (int i = 0; i < k; ++i) s[i] = i;
    while (true) {
        out.push_back(s);
        int i = k - 1;
        while (i >= 0 && s[i] == n - k + i) --i;
        if (i < 0) break;
        ++s[i];
        for (int j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
    }
    return out;
}

inline long long binom(int n, int k)
{
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

/// Lexicographic index of a sorted k-subset of {0..n-1}.
inline int subset_index(const std::vector<int>& s, int n)
{
    int k = int(s.size());
    long long idx = 0;
    int prev = -1;
    for (int i = 0; i < k; ++i) {
        for (int x = prev + 1; x < s[i]; ++x) idx += binom(n - 1 - x, k - 1 - i);
        prev = s[i];
    }
    return int(idx);
}

/**
 * The matrix of Lambda^k A in the lexicographic wedge bases: the entry at
 * (row subset S, column subset T) is det A[S, T]. Functorial in A.
 */
inline IntMatrix exterior_power_map(const IntMatrix& a, int k)
{
    if (k == 0) return IntMatrix::identity(1);
    auto rows_s = subsets_lex(a.rows(), k);
    auto cols_s = subsets_lex(a.cols(), k);
    IntMatrix m(int(rows_s.size()), int(cols_s.size()));
    for (size_t i = 0; i < rows_s.size(); ++i)
        for (size_t j = 0; j < cols_s.size(); ++j) {
            IntMatrix sub(k, k);
            for (int r = 0; r < k; ++r)
                for (int c = 0; c < k; ++c) sub(r, c) = a(rows_s[i][r], cols_s[j][c]);
            m(int(i), int(j)) = det(sub);
        }
    return m;
}

/// Wedge of multivectors given in lex wedge coordinates over Q^n.
inline RatVec wedge(const RatVec& u, int a, const RatVec& v, int b, int n)
{
    auto sa = subsets_lex(n, a), sb = subsets_lex(n, b);
    auto sc = subsets_lex(n, a + b);
    if (int(sa.size()) != int(u.size()) || int(sb.size()) != int(v.size()))
        throw std::invalid_argument("wedge coordinate size mismatch");
    RatVec out(sc.size(), Rat(0));
    for (size_t i = 0; i < sa.size(); ++i) {
        if (u[i] == 0) continue;
        for (size_t j = 0; j < sb.size(); ++j) {
            if (v[j] == 0) continue;
            // merge subsets; vanishes unless disjoint
            std::vector<int> merged;
            merged.reserve(a + b);
            bool dup = false;
            {
                std::vector<int> all(sa[i]);
                all.insert(all.end(), sb[j].begin(), sb[j].end());
                // count inversions of the concatenation to get the shuffle sign
                int inv = 0;
                for (size_t x = 0; x < all.size(); ++x)
                    for (size_t y = x + 1; y < all.size(); ++y) {
                        if (all[x] == all[y]) { dup = true; }
                        if (all[x] > all[y]) ++inv;
                    }
                if (dup) continue;
                merged = all;
                std::sort(merged.begin(), merged.end());
                Rat term = u[i] * v[j];
                if (inv % 2) term = -term;
                out[subset_index(merged, n)] += term;
            }
        }
    }
    return out;
}

/// Wedge coordinates of v_0 ^ ... ^ v_{k-1} for vectors in Q^n.
inline RatVec wedge_of_vectors(const std::vector<RatVec>& vs, int n)
{
    RatVec acc(1, Rat(1));
    int deg = 0;
    for (const auto& v : vs) {
        acc = wedge(acc, deg, v, 1, n);
        deg += 1;
    }
    return acc;
}

}  // namespace tropicore
