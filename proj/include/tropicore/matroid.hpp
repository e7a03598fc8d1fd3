/**
 * Matroids on small ground sets, their flats, Bergman fans, and the local
 * codimension-1 smoothness certificate used by the intersection pairing.
 */

#pragma once

#include "space.hpp"

namespace tropicore {

struct InvalidRankFunction : std::runtime_error
{
    explicit InvalidRankFunction(const std::string& w)
        : std::runtime_error("invalid rank function: " + w)
    {
    }
};

struct LooplessRequired : std::runtime_error
{
    LooplessRequired() : std::runtime_error("Bergman fans require a loopless matroid") {}
};

struct NotCodimOne : std::runtime_error
{
    explicit NotCodimOne(int fid)
        : std::runtime_error("face " + std::to_string(fid) +
                             " is not a mobile codimension-1 face")
    {
    }
};

class Matroid
{
  public:
    Matroid(int ground, std::vector<int> rank_by_mask)
        : n_(ground), rank_(std::move(rank_by_mask))
    {
        if (int(rank_.size()) != (1 << n_))
            throw InvalidRankFunction("rank table must cover all subsets");
        check_axioms();
    }

    static Matroid uniform(int r, int n)
    {
        std::vector<int> rk(size_t(1) << n);
        for (int m = 0; m < (1 << n); ++m) rk[m] = std::min(r, __builtin_popcount(unsigned(m)));
        return Matroid(n, rk);
    }

    static Matroid from_bases(int n, const std::vector<std::vector<int>>& bases)
    {
        if (bases.empty()) throw InvalidRankFunction("empty bases list");
        std::vector<int> masks;
        for (const auto& b : bases) {
            int m = 0;
            for (int e : b) {
                if (e < 0 || e >= n) throw InvalidRankFunction("basis element out of range");
                m |= 1 << e;
            }
            masks.push_back(m);
        }
        std::vector<int> rk(size_t(1) << n, 0);
        for (int a = 0; a < (1 << n); ++a) {
            int best = 0;
            for (int b : masks) best = std::max(best, __builtin_popcount(unsigned(a & b)));
            rk[a] = best;
        }
        return Matroid(n, rk);
    }

    int ground_size() const { return n_; }
    int rank(int mask) const { return rank_[mask]; }
    int rank() const { return rank_[(1 << n_) - 1]; }

    bool loopless() const
    {
        for (int e = 0; e < n_; ++e)
            if (rank(1 << e) == 0) return false;
        return true;
    }

    /// All flats (including the empty flat when closed, and the ground set).
    std::vector<int> flats() const
    {
        std::vector<int> out;
        for (int f = 0; f < (1 << n_); ++f) {
            bool flat = true;
            for (int e = 0; e < n_ && flat; ++e)
                if (!(f & (1 << e)) && rank(f | (1 << e)) == rank(f)) flat = false;
            if (flat) out.push_back(f);
        }
        return out;
    }

  private:
    int n_;
    std::vector<int> rank_;

    void check_axioms() const
    {
        if (rank_[0] != 0) throw InvalidRankFunction("rank of the empty set is nonzero");
        for (int a = 0; a < (1 << n_); ++a) {
            if (rank_[a] < 0 || rank_[a] > __builtin_popcount(unsigned(a)))
                throw InvalidRankFunction("cardinality bound fails");
            for (int e = 0; e < n_; ++e)
                if (!(a & (1 << e)) && rank_[a | (1 << e)] < rank_[a])
                    throw InvalidRankFunction("monotonicity fails");
        }
        for (int a = 0; a < (1 << n_); ++a)
            for (int b = 0; b < (1 << n_); ++b)
                if (rank_[a | b] + rank_[a & b] > rank_[a] + rank_[b])
                    throw InvalidRankFunction("submodularity fails");
    }
};

/// Finishes a pre-seeded (fan-style) space: sedentarity, finiteness, parents.
inline void derive_dummy(TropicalSpace& x)
{
    for (auto& f : x.faces) {
        f.sedentarity.clear();
        f.parent = f.id;
        // fan faces of positive dimension are never finite
        f.finite = f.dim == 0;
    }
}

/**
 * The Bergman fan of a loopless matroid as a tropical space: one vertex at
 * the origin of R^{|M|-1}, one cone per flag of proper nonempty flats. The
 * realization sends e_j to the standard basis for j < |M|-1 and the last
 * element to -(e_0 + ... + e_{n-2}).
 */
inline TropicalSpace bergman_fan(const Matroid& m)
{
    if (!m.loopless()) throw LooplessRequired();
    int n = m.ground_size();
    int dim = n - 1;
    auto evec = [&](int j) {
        IntVec v(dim, Int(0));
        if (j < dim) v[j] = 1;
        else
            for (int i = 0; i < dim; ++i) v[i] = -1;
        return v;
    };
    auto flat_vec = [&](int mask) {
        IntVec v(dim, Int(0));
        for (int j = 0; j < n; ++j)
            if (mask & (1 << j)) {
                IntVec e = evec(j);
                for (int i = 0; i < dim; ++i) v[i] += e[i];
            }
        return v;
    };
    std::vector<int> proper;
    int full = (1 << n) - 1;
    for (int f : m.flats())
        if (f != 0 && f != full) proper.push_back(f);

    TropicalSpace x;
    x.faces.push_back({0, 0, {0}, {}, std::nullopt, true});
    StarChart c;
    c.vertex = 0;
    c.ambient_dim = dim;
    c.coordinates[0] = TPoint(dim, TCoord(Rat(0)));
    c.records[0] = FaceRecord{};

    // enumerate flags of proper flats
    std::vector<std::vector<int>> chains;
    std::function<void(std::vector<int>&)> extend = [&](std::vector<int>& chain) {
        if (!chain.empty()) chains.push_back(chain);
        int last = chain.empty() ? 0 : chain.back();
        for (int f : proper) {
            if (f == last) continue;
            if ((f & last) != last) continue;  // need last strictly inside f
            chain.push_back(f);
            extend(chain);
            chain.pop_back();
        }
    };
    std::vector<int> chain;
    extend(chain);

    int next_id = 1;
    for (const auto& ch : chains) {
        Face f;
        f.id = next_id++;
        f.dim = int(ch.size());
        f.vertices = {0};
        f.finite = false;
        x.faces.push_back(f);
        FaceRecord r;
        for (int mask : ch) {
            r.generators.push_back(flat_vec(mask));
            r.divisorial.push_back(false);
        }
        c.records[f.id] = r;
    }
    x.charts[0] = c;
    derive_dummy(x);
    x.build();
    return x;
}

struct SmoothnessCertificate
{
    int face = -1;
    int adjacent_facets = 0;
    int relation_rank = 0;  // rank of the outward-vector matrix
    bool balanced = false;
    bool passes = false;  // exactly one relation among the outward vectors
};

/**
 * Local smoothness at a mobile codimension-1 face: the primitive outward
 * vectors of the adjacent facets, taken modulo the face span, must satisfy
 * exactly one linear relation (their sum).
 */
inline SmoothnessCertificate codim1_smoothness_certificate(const TropicalSpace& x, int fid)
{
    const Face& f = x.face(fid);
    if (!f.sedentarity.empty() || f.dim != x.dim() - 1) throw NotCodimOne(fid);
    SmoothnessCertificate cert;
    cert.face = fid;
    int rc = x.reference_chart(fid);
    IntMatrix qm = quotient_map(x.tangent_lattice(fid));
    std::vector<RatVec> eps;
    RatVec sum(qm.rows(), Rat(0));
    for (int d : x.cofacets_of(fid)) {
        IntVec e;
        for (const auto& g : x.record(rc, d).generators) {
            IntVec img = qm.apply(g);
            bool zero = true;
            for (const auto& v : img)
                if (v != 0) zero = false;
            if (!zero) { e = primitive(img); break; }
        }
        if (e.empty()) throw std::runtime_error("facet inside the face span");
        eps.push_back(to_rat(e));
        for (size_t i = 0; i < sum.size(); ++i) sum[i] += Rat(e[i]);
    }
    cert.adjacent_facets = int(eps.size());
    cert.relation_rank = rank_of(eps);
    cert.balanced = is_zero(sum);
    cert.passes = cert.balanced && cert.relation_rank == cert.adjacent_facets - 1;
    return cert;
}

}  // namespace tropicore
