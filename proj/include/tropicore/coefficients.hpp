/**
 * Coefficient systems on a tropical space: framing fibers F_p (generated
 * subgroups of exterior powers of tangent lattices), wave fibers W_k
 * (exterior powers of wave lattices), the transports iota and pi, and the
 * wedge action of wave classes on framings.
 *
 * Carriers are stored in the lexicographic wedge coordinates of the face's
 * reference chart, as canonical HNF lattice bases. All maps returned here are
 * integer matrices acting on carrier coordinates (columns = source basis).
 */

#pragma once

#include "space.hpp"

namespace tropicore {

struct NotAFacePair : std::runtime_error
{
    NotAFacePair(int a, int b)
        : std::runtime_error("faces " + std::to_string(b) + " < " + std::to_string(a) +
                             " are not a face pair")
    {
    }
};

struct NotDivisible : std::runtime_error
{
    explicit NotDivisible(int fid)
        : std::runtime_error("coefficient on face " + std::to_string(fid) +
                             " is not divisible by its divisorial vectors")
    {
    }
};

struct CoefFiber
{
    int face = -1;
    int p = 0;
    LatticeBasis carrier;  // inside Lambda^p Z^N of the reference chart
};

struct WaveFiber
{
    int face = -1;
    int k = 0;
    LatticeBasis carrier;           // Lambda^k W_Z
    LatticeBasis divisorial_ideal;  // wedges involving the divisorial subspace
    LatticeBasis mobile_carrier;    // Lambda^k of the chosen complement of W_div
};

class FiberCache
{
  public:
    explicit FiberCache(const TropicalSpace& x) : x_(x) {}

    const TropicalSpace& space() const { return x_; }

    // ------------------------------------------------------------------
    // Framing fibers
    // ------------------------------------------------------------------

    const CoefFiber& framing(int fid, int p)
    {
        auto key = std::make_pair(fid, p);
        auto it = framing_.find(key);
        if (it != framing_.end()) return it->second;
        CoefFiber f;
        f.face = fid;
        f.p = p;
        f.carrier = framing_in(fid, p, x_.reference_chart(fid));
        return framing_.emplace(key, std::move(f)).first->second;
    }

    /// Framing carrier computed in an arbitrary chart containing the face.
    LatticeBasis framing_in(int fid, int p, int chart_base) const
    {
        int n = x_.chart(chart_base).ambient_dim;
        if (p == 0) {
            LatticeBasis l(1);
            l.basis = IntMatrix::identity(1);
            return l;
        }
        std::vector<IntVec> gens;
        size_t sed = x_.face(fid).sedentarity.size();
        for (const auto& g : x_.faces) {
            if (!(g.id == fid || x_.leq(fid, g.id))) continue;
            if (g.sedentarity.size() != sed) continue;
            LatticeBasis t = x_.tangent_lattice_in(g.id, chart_base);
            if (t.rank() < p) continue;
            std::vector<RatVec> rows;
            for (int i = 0; i < t.rank(); ++i) rows.push_back(to_rat(t.basis.row(i)));
            for (const auto& s : subsets_lex(t.rank(), p)) {
                std::vector<RatVec> vs;
                for (int i : s) vs.push_back(rows[i]);
                gens.push_back(primitive_exact(wedge_of_vectors(vs, n)));
            }
        }
        return LatticeBasis::span(gens, int(binom(n, p)));
    }

    // ------------------------------------------------------------------
    // Wave fibers
    // ------------------------------------------------------------------

    const WaveFiber& wave(int fid, int k)
    {
        auto key = std::make_pair(fid, k);
        auto it = wave_.find(key);
        if (it != wave_.end()) return it->second;
        WaveFiber w;
        w.face = fid;
        w.k = k;
        int rc = x_.reference_chart(fid);
        int n = x_.chart(rc).ambient_dim;
        LatticeBasis wl = x_.wave_lattice(fid);
        LatticeBasis dl = x_.divisorial_lattice(fid);
        w.carrier = wedge_power(wl, k, n);
        // the chosen complement of W_div: waves with zero divisorial coords
        std::vector<IntVec> killers;
        for (int j : x_.record(rc, fid).sedentarity) {
            IntVec e(n, Int(0));
            e[j] = 1;
            killers.push_back(e);
        }
        LatticeBasis mob = wl;
        if (!killers.empty()) {
            LatticeBasis offsed(n);
            offsed.basis = kernel_int(IntMatrix::from_rows(killers, n));
            mob = span_intersection(wl, offsed);
        }
        w.mobile_carrier = wedge_power(mob, k, n);
        // ideal spanned by d ^ (k-1 wedges of W)
        std::vector<IntVec> ideal;
        if (k >= 1 && dl.rank() > 0) {
            LatticeBasis sub = wedge_power(wl, k - 1, n);
            for (int i = 0; i < dl.rank(); ++i)
                for (int j = 0; j < sub.rank(); ++j) {
                    RatVec prod = wedge(to_rat(dl.basis.row(i)), 1, to_rat(sub.basis.row(j)),
                                        k - 1, n);
                    ideal.push_back(primitive_exact(prod));
                }
        }
        w.divisorial_ideal = saturate(LatticeBasis::span(ideal, int(binom(n, k))));
        return wave_.emplace(key, std::move(w)).first->second;
    }

    // ------------------------------------------------------------------
    // Transports
    // ------------------------------------------------------------------

    /**
     * iota: F_p(from) -> F_p(to) for a subface `to` of `from`. Inclusion for
     * equal sedentarity, divisorial projection followed by inclusion when the
     * sedentarity grows. Columns are images of the source carrier basis,
     * expressed in the target carrier basis.
     */
    IntMatrix iota_matrix(int from, int to, int p)
    {
        auto key = std::make_tuple(from, to, p);
        auto it = iota_.find(key);
        if (it != iota_.end()) return it->second;
        if (!(from == to || x_.leq(to, from))) throw NotAFacePair(from, to);
        const CoefFiber& src = framing(from, p);
        const CoefFiber& dst = framing(to, p);
        IntMatrix m(dst.carrier.rank(), src.carrier.rank());
        if (p == 0) {
            m = IntMatrix::identity(1);
        } else {
            int rc_to = x_.reference_chart(to);
            IntMatrix lam = wedge_transport(x_.reference_chart(from), rc_to, p);
            // divisorial projection: kill wedge coordinates meeting the new
            // sedentarity directions
            std::set<int> jnew;
            for (int j : x_.record(rc_to, to).sedentarity)
                if (!x_.record(rc_to, from).sedentarity.count(j)) jnew.insert(j);
            int n = x_.chart(rc_to).ambient_dim;
            auto subs = subsets_lex(n, p);
            for (int c = 0; c < src.carrier.rank(); ++c) {
                RatVec img = lam.apply(to_rat(src.carrier.basis.row(c)));
                for (size_t s = 0; s < subs.size(); ++s)
                    for (int j : subs[s])
                        if (jnew.count(j)) img[s] = 0;
                auto coords = dst.carrier.coords_of(img);
                if (!coords)
                    throw std::runtime_error("iota image leaves the target framing fiber");
                for (int r = 0; r < dst.carrier.rank(); ++r) {
                    if (den((*coords)[r]) != 1)
                        throw std::runtime_error("iota image is not integral");
                    m(r, c) = num((*coords)[r]);
                }
            }
        }
        return iota_.emplace(key, std::move(m)).first->second;
    }

    /**
     * pi: W_k(from) -> W_k(to) for `from` a subface of `to` (inclusion of the
     * wave spaces spanned by the parent faces).
     */
    IntMatrix pi_matrix(int from, int to, int k)
    {
        auto key = std::make_tuple(from, to, k);
        auto it = pi_.find(key);
        if (it != pi_.end()) return it->second;
        if (!(from == to || x_.leq(from, to))) throw NotAFacePair(to, from);
        const WaveFiber& src = wave(from, k);
        const WaveFiber& dst = wave(to, k);
        IntMatrix lam = wedge_transport(x_.reference_chart(from), x_.reference_chart(to), k);
        IntMatrix m(dst.carrier.rank(), src.carrier.rank());
        for (int c = 0; c < src.carrier.rank(); ++c) {
            RatVec img = lam.apply(to_rat(src.carrier.basis.row(c)));
            auto coords = dst.carrier.coords_of(img);
            if (!coords) throw std::runtime_error("pi image leaves the target wave fiber");
            for (int r = 0; r < dst.carrier.rank(); ++r) {
                if (den((*coords)[r]) != 1)
                    throw std::runtime_error("pi image is not integral");
                m(r, c) = num((*coords)[r]);
            }
        }
        return pi_.emplace(key, std::move(m)).first->second;
    }

    /// Matrix of Lambda^p of the chart transition (identity when equal).
    IntMatrix wedge_transport(int from_chart, int to_chart, int p) const
    {
        if (from_chart == to_chart)
            return IntMatrix::identity(int(binom(x_.chart(from_chart).ambient_dim, p)));
        const Transition* t = x_.find_transition(from_chart, to_chart);
        if (!t)
            throw std::runtime_error("missing transition " + std::to_string(from_chart) +
                                     " -> " + std::to_string(to_chart));
        return exterior_power_map(t->linear, p);
    }

    // ------------------------------------------------------------------
    // Wedge action
    // ------------------------------------------------------------------

    /// True when beta (carrier coordinates of F_p(fid), rational) is
    /// divisible by every divisorial vector of the face.
    bool divisible_by_divisorials(int fid, int p, const RatVec& beta)
    {
        int rc = x_.reference_chart(fid);
        int n = x_.chart(rc).ambient_dim;
        RatVec amb = ambient_framing(fid, p, beta);
        for (int j : x_.record(rc, fid).sedentarity) {
            RatVec d(n, Rat(0));
            d[j] = -1;
            if (!is_zero(wedge(d, 1, amb, p, n))) return false;
        }
        return true;
    }

    /// Ambient wedge coordinates of a framing element given in carrier coords.
    RatVec ambient_framing(int fid, int p, const RatVec& beta)
    {
        const CoefFiber& f = framing(fid, p);
        int n = x_.chart(x_.reference_chart(fid)).ambient_dim;
        RatVec amb(size_t(binom(n, p)), Rat(0));
        for (int i = 0; i < f.carrier.rank(); ++i) {
            if (beta[i] == 0) continue;
            for (size_t j = 0; j < amb.size(); ++j)
                amb[j] += beta[i] * Rat(f.carrier.basis(i, j));
        }
        return amb;
    }

    /// Ambient wedge coordinates of a wave element given in carrier coords.
    RatVec ambient_wave(int fid, int k, const RatVec& coords)
    {
        const WaveFiber& w = wave(fid, k);
        int n = x_.chart(x_.reference_chart(fid)).ambient_dim;
        RatVec amb(size_t(binom(n, k)), Rat(0));
        for (int i = 0; i < w.carrier.rank(); ++i) {
            if (coords[i] == 0) continue;
            for (size_t j = 0; j < amb.size(); ++j)
                amb[j] += coords[i] * Rat(w.carrier.basis(i, j));
        }
        return amb;
    }

    /// Carrier coordinates of an ambient framing vector (rational solve).
    RatVec carrier_framing(int fid, int p, const RatVec& ambient)
    {
        const CoefFiber& f = framing(fid, p);
        auto coords = f.carrier.coords_of(ambient);
        if (!coords)
            throw std::runtime_error("vector is not in the framing fiber of face " +
                                     std::to_string(fid));
        return *coords;
    }

    /**
     * Wedge action of a wave k-vector (ambient wedge coordinates of a lift)
     * on a framing element of F_p (carrier coordinates over Q); returns
     * carrier coordinates in F_{p+k} over Q. Requires divisibility whenever
     * the lift is ambiguous.
     */
    RatVec wedge_action(int fid, const RatVec& w_ambient, int k, const RatVec& beta, int p)
    {
        if (k == 0) {
            RatVec out = beta;
            if (w_ambient.size() != 1)
                throw std::invalid_argument("degree-0 wave vector must be a scalar");
            for (auto& xv : out) xv *= w_ambient[0];
            return out;
        }
        int rc = x_.reference_chart(fid);
        int n = x_.chart(rc).ambient_dim;
        if (!x_.record(rc, fid).sedentarity.empty() && !divisible_by_divisorials(fid, p, beta))
            throw NotDivisible(fid);
        // project the lift along the divisorial coordinates, then wedge
        RatVec w = w_ambient;
        auto subs = subsets_lex(n, k);
        for (size_t s = 0; s < subs.size(); ++s)
            for (int j : subs[s])
                if (x_.record(rc, fid).sedentarity.count(j)) w[s] = 0;
        RatVec amb = ambient_framing(fid, p, beta);
        RatVec prod = wedge(w, k, amb, p, n);
        return carrier_framing(fid, p + k, prod);
    }

  private:
    const TropicalSpace& x_;
    std::map<std::pair<int, int>, CoefFiber> framing_;
    std::map<std::pair<int, int>, WaveFiber> wave_;
    std::map<std::tuple<int, int, int>, IntMatrix> iota_;
    std::map<std::tuple<int, int, int>, IntMatrix> pi_;

    static IntVec primitive_exact(const RatVec& v)
    {
        // keep exact integer content (no division by the content): wedges of
        // lattice vectors are integral already
        IntVec w(v.size());
        for (size_t i = 0; i < v.size(); ++i) {
            if (den(v[i]) != 1) throw std::logic_error("unexpected non-integral wedge");
            w[i] = num(v[i]);
        }
        return w;
    }

    /// Lambda^k of a lattice: spanned by wedges of basis k-subsets.
    static LatticeBasis wedge_power(const LatticeBasis& l, int k, int n)
    {
        if (k == 0) {
            LatticeBasis out(1);
            out.basis = IntMatrix::identity(1);
            return out;
        }
        std::vector<IntVec> gens;
        std::vector<RatVec> rows;
        for (int i = 0; i < l.rank(); ++i) rows.push_back(to_rat(l.basis.row(i)));
        for (const auto& s : subsets_lex(l.rank(), k)) {
            std::vector<RatVec> vs;
            for (int i : s) vs.push_back(rows[i]);
            gens.push_back(primitive_exact(wedge_of_vectors(vs, n)));
        }
        return LatticeBasis::span(gens, int(binom(n, k)));
    }
};

}  // namespace tropicore
