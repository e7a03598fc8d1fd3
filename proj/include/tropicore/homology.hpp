/**
 * Chain complexes and homology of tropical spaces: cellular and barycentric
 * complexes for the framing systems F_p / F^p (integral) and the wave
 * systems W_k / W^k (rational ranks), homology tables, straight classes of
 * weighted balanced subcomplexes, and straight cowave chains.
 */

#pragma once

#include "coefficients.hpp"

namespace tropicore {

enum class System { F, Fdual, W, Wdual };

inline bool is_cohomological(System s) { return s == System::Fdual || s == System::W; }
inline bool is_wave_system(System s) { return s == System::W || s == System::Wdual; }

struct NotBalanced : std::runtime_error
{
    explicit NotBalanced(int fid)
        : std::runtime_error("weighted balancing fails at face " + std::to_string(fid))
    {
    }
};

struct NotPurelySkeletal : std::runtime_error
{
    explicit NotPurelySkeletal(int fid)
        : std::runtime_error("face " + std::to_string(fid) +
                             " is not purely skeletal for the requested degree")
    {
    }
};

struct NotACycle : std::runtime_error
{
    explicit NotACycle(const std::string& what) : std::runtime_error("not a cycle: " + what) {}
};

/**
 * A graded complex with one integer matrix per adjacent degree pair.
 * Homological systems store downward maps (maps[q]: C_q -> C_{q-1});
 * cohomological ones upward maps (maps[q]: C_q -> C_{q+1}).
 */
struct ChainComplexData
{
    System sys = System::F;
    int coef_degree = 0;  // p for framing systems, k for wave systems
    bool barycentric = false;
    int top = 0;  // top chain degree

    std::vector<std::vector<Flag>> keys;    // per degree, sorted
    std::vector<std::map<Flag, int>> offset;  // key -> block offset
    std::vector<std::map<Flag, int>> rank;    // key -> fiber rank
    std::vector<int> total;                  // per degree
    std::map<int, IntMatrix> maps;           // keyed by source degree

    bool cohomological() const { return is_cohomological(sys); }

    const IntMatrix& map_from(int q) const
    {
        static const IntMatrix empty(0, 0);
        auto it = maps.find(q);
        return it == maps.end() ? empty : it->second;
    }

    IntMatrix out_map(int q) const
    {
        auto it = maps.find(q);
        if (it != maps.end()) return it->second;
        int target = cohomological() ? q + 1 : q - 1;
        int rows = (target >= 0 && target <= top) ? total[target] : 0;
        return IntMatrix(rows, q >= 0 && q <= top ? total[q] : 0);
    }

    IntMatrix in_map(int q) const
    {
        int src = cohomological() ? q - 1 : q + 1;
        if (src >= 0 && src <= top) {
            auto it = maps.find(src);
            if (it != maps.end()) return it->second;
        }
        int cols = (src >= 0 && src <= top) ? total[src] : 0;
        return IntMatrix(q >= 0 && q <= top ? total[q] : 0, cols);
    }

    /// H_q (or H^q for cohomological systems).
    HomologyGroup homology_at(int q) const
    {
        if (q < 0 || q > top) return {};
        return homology_of_pair(out_map(q), in_map(q));
    }

    /// Dense coordinate vector of a sparse chain in degree q.
    RatVec assemble(int q, const std::map<Flag, RatVec>& terms) const
    {
        RatVec v(total[q], Rat(0));
        for (const auto& [key, coef] : terms) {
            auto it = offset[q].find(key);
            if (it == offset[q].end())
                throw std::invalid_argument("chain term on an unknown generator");
            for (size_t i = 0; i < coef.size(); ++i) v[it->second + i] = coef[i];
        }
        return v;
    }

    std::map<Flag, RatVec> scatter(int q, const RatVec& v) const
    {
        std::map<Flag, RatVec> out;
        for (const auto& [key, off] : offset[q]) {
            int r = rank[q].at(key);
            RatVec c(r, Rat(0));
            bool nz = false;
            for (int i = 0; i < r; ++i) {
                c[i] = v[off + i];
                if (c[i] != 0) nz = true;
            }
            if (nz) out[key] = c;
        }
        return out;
    }

    /// Image of a degree-q chain under the complex's map out of degree q.
    RatVec apply_out(int q, const RatVec& v) const { return out_map(q).apply(v); }
};

/// A chain with named generators; coefficients in carrier-basis coordinates.
struct Chain
{
    System sys = System::F;
    int coef_degree = 0;
    int q = 0;
    bool barycentric = false;
    std::map<Flag, RatVec> terms;

    static Flag cell(int fid) { return Flag{{fid}}; }
};

namespace detail {

struct BoundaryEvent
{
    int q = 0;          // source degree
    Flag src, dst;      // dst is canonical
    int sign = 1;
    int from_face = -1;  // coefficient transport: from_face is a coface of to_face
    int to_face = -1;
};

inline std::vector<BoundaryEvent> cellular_events(const TropicalSpace& x)
{
    std::vector<BoundaryEvent> ev;
    for (int q = 1; q <= x.dim(); ++q)
        for (int fid : x.face_ids_of_dim(q))
            for (int sub : x.facets_of(fid))
                ev.push_back({q, Flag{{fid}}, Flag{{sub}}, x.incidence(fid, sub), fid, sub});
    return ev;
}

inline std::vector<BoundaryEvent> barycentric_events(const TropicalSpace& x)
{
    std::vector<BoundaryEvent> ev;
    for (int q = 1; q <= x.dim(); ++q) {
        for (const Flag& fl : x.bar_simplices(q)) {
            for (int i = 0; i <= q; ++i) {
                Flag dropped;
                for (int j = 0; j <= q; ++j)
                    if (j != i) dropped.faces.push_back(fl.faces[j]);
                int sign = (i % 2 == 0) ? 1 : -1;
                if (i == 0) {
                    auto [canon, killed] = x.canonicalize_flag(dropped);
                    ev.push_back({q, fl, canon, sign, fl.top(), canon.top()});
                } else {
                    ev.push_back({q, fl, dropped, sign, fl.top(), dropped.top()});
                }
            }
        }
    }
    return ev;
}

inline int fiber_rank(FiberCache& fc, System sys, int fid, int deg)
{
    if (is_wave_system(sys)) return fc.wave(fid, deg).carrier.rank();
    return fc.framing(fid, deg).carrier.rank();
}

/// Coefficient transport matrix of an event for the given system, acting on
/// carrier coordinates. For homological systems it maps source-fiber to
/// target-fiber coordinates; for cohomological ones the other way.
inline IntMatrix event_block(FiberCache& fc, System sys, const BoundaryEvent& e, int deg)
{
    switch (sys) {
        case System::F: return fc.iota_matrix(e.from_face, e.to_face, deg);
        case System::Fdual: return fc.iota_matrix(e.from_face, e.to_face, deg).transpose();
        case System::W: return fc.pi_matrix(e.to_face, e.from_face, deg);
        case System::Wdual: return fc.pi_matrix(e.to_face, e.from_face, deg).transpose();
    }
    throw std::logic_error("unknown system");
}

}  // namespace detail

/// Assembles the cellular or barycentric complex of a compact valid space.
inline ChainComplexData build_complex(FiberCache& fc, System sys, int deg, bool barycentric)
{
    const TropicalSpace& x = fc.space();
    ChainComplexData c;
    c.sys = sys;
    c.coef_degree = deg;
    c.barycentric = barycentric;
    c.top = x.dim();
    c.keys.resize(c.top + 1);
    c.offset.resize(c.top + 1);
    c.rank.resize(c.top + 1);
    c.total.resize(c.top + 1, 0);
    for (int q = 0; q <= c.top; ++q) {
        if (barycentric) {
            c.keys[q] = x.bar_simplices(q);
        } else {
            for (int fid : x.face_ids_of_dim(q)) c.keys[q].push_back(Flag{{fid}});
            std::sort(c.keys[q].begin(), c.keys[q].end());
        }
        int off = 0;
        for (const Flag& k : c.keys[q]) {
            int r = detail::fiber_rank(fc, sys, k.top(), deg);
            c.offset[q][k] = off;
            c.rank[q][k] = r;
            off += r;
        }
        c.total[q] = off;
    }
    auto events = barycentric ? detail::barycentric_events(x) : detail::cellular_events(x);
    bool up = c.cohomological();
    // allocate
    for (int q = 0; q <= c.top; ++q) {
        if (!up && q >= 1) c.maps.emplace(q, IntMatrix(c.total[q - 1], c.total[q]));
        if (up && q < c.top) c.maps.emplace(q, IntMatrix(c.total[q + 1], c.total[q]));
    }
    for (const auto& e : events) {
        IntMatrix block = detail::event_block(fc, sys, e, deg);
        if (!up) {
            IntMatrix& m = c.maps.at(e.q);
            int ro = c.offset[e.q - 1].at(e.dst);
            int co = c.offset[e.q].at(e.src);
            for (int i = 0; i < block.rows(); ++i)
                for (int j = 0; j < block.cols(); ++j) m(ro + i, co + j) += e.sign * block(i, j);
        } else {
            IntMatrix& m = c.maps.at(e.q - 1);
            int ro = c.offset[e.q].at(e.src);
            int co = c.offset[e.q - 1].at(e.dst);
            for (int i = 0; i < block.rows(); ++i)
                for (int j = 0; j < block.cols(); ++j) m(ro + i, co + j) += e.sign * block(i, j);
        }
    }
    // d o d = 0 sanity
    for (int q = 0; q <= c.top; ++q) {
        IntMatrix a = c.out_map(q);
        IntMatrix b = c.in_map(q);
        if (a.cols() > 0 && b.cols() > 0 && !(a * b).is_zero())
            throw std::logic_error("assembled complex fails d^2 = 0");
    }
    return c;
}

inline ChainComplexData cellular_complex(FiberCache& fc, System sys, int deg)
{
    return build_complex(fc, sys, deg, false);
}

inline ChainComplexData barycentric_complex(FiberCache& fc, System sys, int deg)
{
    return build_complex(fc, sys, deg, true);
}

// ---------------------------------------------------------------------------
// Homology tables
// ---------------------------------------------------------------------------

struct HomologyTable
{
    // entry[p][q]; for wave systems the betti numbers are rational ranks and
    // torsion is not reported
    std::vector<std::vector<HomologyGroup>> entry;

    int betti(int p, int q) const { return entry[p][q].betti; }
};

inline HomologyTable homology_table(FiberCache& fc, System sys, bool barycentric = false)
{
    const TropicalSpace& x = fc.space();
    if (!x.compact()) throw std::invalid_argument("homology requires a compact space");
    int n = x.dim();
    HomologyTable t;
    t.entry.assign(n + 1, std::vector<HomologyGroup>(n + 1));
    for (int p = 0; p <= n; ++p) {
        ChainComplexData c = build_complex(fc, sys, p, barycentric);
        for (int q = 0; q <= n; ++q) {
            t.entry[p][q] = c.homology_at(q);
            if (is_wave_system(sys)) t.entry[p][q].torsion.clear();
        }
    }
    return t;
}

// ---------------------------------------------------------------------------
// Homology bases over Q (free parts) and class coordinates
// ---------------------------------------------------------------------------

struct HomologyBasis
{
    int q = 0;
    int betti = 0;
    IntMatrix kernel;              // rows: basis of the cycle lattice
    IntMatrix u;                   // SNF row transform on kernel coordinates
    int image_rank = 0;
    std::vector<RatVec> reps;      // representative cycles (dense coordinates)

    /// Class coordinates of a cycle (dense coordinates) in the free basis.
    RatVec class_of(const RatVec& cycle) const
    {
        std::vector<RatVec> rows;
        for (int i = 0; i < kernel.rows(); ++i) rows.push_back(to_rat(kernel.row(i)));
        auto c = solve_in_span(rows, cycle);
        if (!c) throw NotACycle("vector is not in the cycle space");
        RatVec y = u.apply(*c);
        return RatVec(y.begin() + image_rank, y.end());
    }
};

inline HomologyBasis homology_basis(const ChainComplexData& c, int q)
{
    HomologyBasis b;
    b.q = q;
    b.kernel = kernel_int(c.out_map(q));
    int z = b.kernel.rows();
    IntMatrix d_in = c.in_map(q);
    std::vector<RatVec> kernel_rows;
    for (int i = 0; i < z; ++i) kernel_rows.push_back(to_rat(b.kernel.row(i)));
    IntMatrix xcoords(d_in.cols(), z);
    for (int j = 0; j < d_in.cols(); ++j) {
        auto s = solve_in_span(kernel_rows, to_rat(d_in.col(j)));
        if (!s) throw std::logic_error("image not inside the cycle space");
        for (int i = 0; i < z; ++i) {
            if (den((*s)[i]) != 1) throw std::logic_error("non-integral kernel coordinates");
            xcoords(j, i) = num((*s)[i]);
        }
    }
    auto dec = smith_normal_form(xcoords);
    b.image_rank = dec.rank;
    b.betti = z - dec.rank;
    b.u = dec.v.transpose();  // applies to kernel coordinates on the left
    IntMatrix uinv = unimodular_inverse(b.u);
    for (int j = dec.rank; j < z; ++j) {
        RatVec rep(c.total[q], Rat(0));
        for (int i = 0; i < z; ++i) {
            if (uinv(i, j) == 0) continue;
            for (int t = 0; t < c.total[q]; ++t)
                rep[t] += Rat(uinv(i, j) * b.kernel(i, t));
        }
        b.reps.push_back(rep);
    }
    return b;
}

// ---------------------------------------------------------------------------
// Straight classes
// ---------------------------------------------------------------------------

/**
 * The fundamental chain of a weighted balanced p-dimensional subcomplex:
 * coefficients w(sigma) * Vol_sigma with Vol the primitive oriented volume
 * wedge. Throws NotBalanced (with the offending face) when the weighted
 * balancing condition fails on the subcomplex.
 */
inline Chain straight_class(FiberCache& fc, const std::map<int, Int>& zweights, int p)
{
    const TropicalSpace& x = fc.space();
    for (const auto& [fid, w] : zweights)
        if (x.face(fid).dim != p)
            throw std::invalid_argument("straight class facets must have dimension p");
    // weighted balancing on every mobile (p-1)-face of the subcomplex
    for (int eid : x.face_ids_of_dim(p - 1)) {
        if (!x.face(eid).sedentarity.empty()) continue;
        std::vector<int> adj;
        for (int d : x.cofacets_of(eid))
            if (zweights.count(d)) adj.push_back(d);
        if (adj.empty()) continue;
        int rc = x.reference_chart(eid);
        IntMatrix qm = quotient_map(x.tangent_lattice(eid));
        RatVec acc(qm.rows(), Rat(0));
        for (int d : adj) {
            IntVec eps;
            for (const auto& g : x.record(rc, d).generators) {
                IntVec img = qm.apply(g);
                bool zero = true;
                for (const auto& v : img)
                    if (v != 0) zero = false;
                if (!zero) { eps = primitive(img); break; }
            }
            if (eps.empty()) throw NotBalanced(eid);
            for (size_t i = 0; i < eps.size(); ++i) acc[i] += Rat(zweights.at(d) * eps[i]);
        }
        if (!is_zero(acc)) throw NotBalanced(eid);
    }
    Chain ch;
    ch.sys = System::F;
    ch.coef_degree = p;
    ch.q = p;
    for (const auto& [fid, w] : zweights) {
        int n = x.chart(x.reference_chart(fid)).ambient_dim;
        RatVec vol = wedge_of_vectors(x.orientation_basis(fid), n);
        IntVec prim = primitive(vol);
        ch.terms[Chain::cell(fid)] = fc.carrier_framing(fid, p, to_rat(prim));
        for (auto& c : ch.terms[Chain::cell(fid)]) c *= Rat(w);
    }
    // the chain must be a cycle
    ChainComplexData c = cellular_complex(fc, System::F, p);
    if (!is_zero(c.apply_out(p, c.assemble(p, ch.terms))))
        throw NotACycle("straight chain has nonzero boundary");
    return ch;
}

/**
 * Straight cowave chain of a purely m-skeletal q-dimensional subcomplex with
 * rational coweights (one scalar per facet, in the canonical dual-volume
 * trivialization of W^m). Returns the chain and whether it is cobalanced.
 */
inline std::pair<Chain, bool> cowave_chain(FiberCache& fc, const std::map<int, Rat>& coweights,
                                           int m)
{
    const TropicalSpace& x = fc.space();
    int q = -1;
    for (const auto& [fid, cw] : coweights) {
        if (q == -1) q = x.face(fid).dim;
        if (x.face(fid).dim != q)
            throw std::invalid_argument("cowave facets must have equal dimension");
        if (x.wave_lattice(fid).rank() != m) throw NotPurelySkeletal(fid);
    }
    if (q == -1) q = 0;
    int k = m - q;
    Chain ch;
    ch.sys = System::Wdual;
    ch.coef_degree = k;
    ch.q = q;
    for (const auto& [fid, cw] : coweights) {
        if (cw == 0) continue;
        int n = x.chart(x.reference_chart(fid)).ambient_dim;
        const WaveFiber& wk = fc.wave(fid, k);
        const WaveFiber& wm = fc.wave(fid, m);
        if (wm.carrier.rank() != 1)
            throw std::logic_error("W_m carrier is not a line on a purely m-skeletal face");
        RatVec vol = wedge_of_vectors(x.orientation_basis(fid), n);
        IntVec prim = primitive(vol);
        // functional lambda -> cow(lambda ^ Vol) in the dual carrier basis
        RatVec coef(wk.carrier.rank(), Rat(0));
        for (int t = 0; t < wk.carrier.rank(); ++t) {
            RatVec prod = wedge(to_rat(wk.carrier.basis.row(t)), k, to_rat(prim), q, n);
            auto coords = wm.carrier.coords_of(prod);
            if (!coords) throw std::logic_error("wedge left the W_m carrier");
            coef[t] = cw * (*coords)[0];
        }
        ch.terms[Chain::cell(fid)] = coef;
    }
    ChainComplexData c = cellular_complex(fc, System::Wdual, k);
    bool cobalanced = is_zero(c.apply_out(q, c.assemble(q, ch.terms)));
    return {ch, cobalanced};
}

}  // namespace tropicore
