/**
 * Compact polyhedral tropical spaces: finite face poset, per-vertex star
 * charts, chart transitions, exact rational coordinates with a -inf symbol,
 * structural validation, and the first barycentric subdivision.
 *
 * Conventions fixed here and used by every other module:
 *  - Each face has a reference chart: the star chart of its smallest vertex
 *    whose coordinate map covers every vertex of the face. Fibers and
 *    orientation data are computed there.
 *  - A chart record stores primitive direction generators of a face at the
 *    chart's base vertex; generators flagged divisorial are coordinate
 *    directions -e_j pointing to -inf. Generator spans are equivariant
 *    under transitions.
 *  - A face's orientation comes from its ordered vertex list (first vertex
 *    of minimal sedentarity), extended by the listed generator order for
 *    cone faces. Incidence signs follow the outward-first rule.
 *  - Barycentric simplices are flags of constant-sedentarity faces whose
 *    minimal element is finite; the barycenter of a flag element is that of
 *    its most sedentary (finite) subface.
 */

#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "exact_linalg.hpp"

namespace tropicore {

struct UnknownFace : std::runtime_error
{
    explicit UnknownFace(int id) : std::runtime_error("unknown face id " + std::to_string(id)) {}
};

struct Face
{
    int id = -1;
    int dim = 0;
    std::vector<int> vertices;   // ordered; the order is the orientation datum
    std::set<int> sedentarity;   // refined sedentarity in the reference chart
    std::optional<int> parent;   // sedentarity-0 parent (self for mobile faces)
    bool finite = true;          // compact and without higher-sedentary subfaces
};

struct FaceRecord
{
    std::vector<IntVec> generators;  // primitive direction generators at the base vertex
    std::vector<bool> divisorial;    // marks generators that are divisorial vectors
    std::set<int> sedentarity;       // refined sedentarity of the face in this chart
};

struct StarChart
{
    int vertex = -1;
    int ambient_dim = 0;
    std::set<int> infinity_coords;       // coordinates of the base vertex at -inf
    std::map<int, TPoint> coordinates;   // vertex id -> point (representable vertices)
    std::map<int, FaceRecord> records;   // face id -> record, faces adjacent to the base
};

struct Transition
{
    int from_chart = -1;  // chart base-vertex ids
    int to_chart = -1;
    IntMatrix linear;     // N_to x N_from
    RatVec translation;   // length N_to
};

struct Violation
{
    std::string code;
    std::string detail;
};

struct ValidationReport
{
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    void add(const std::string& code, const std::string& detail)
    {
        violations.push_back({code, detail});
    }
};

/// A barycentric simplex: a flag of constant-sedentarity faces with finite
/// minimal element. Flags are listed bottom-to-top; the order orients them.
struct Flag
{
    std::vector<int> faces;
    bool operator<(const Flag& o) const { return faces < o.faces; }
    bool operator==(const Flag& o) const { return faces == o.faces; }
    int top() const { return faces.back(); }
    int dim() const { return int(faces.size()) - 1; }
};

class TropicalSpace
{
  public:
    std::vector<Face> faces;
    std::map<int, StarChart> charts;  // keyed by base vertex id
    std::vector<Transition> transitions;
    std::map<int, Int> weights;  // facet id -> positive weight (optional)

    // ------------------------------------------------------------------
    // Construction
    // ------------------------------------------------------------------

    void build()
    {
        index_.clear();
        for (size_t i = 0; i < faces.size(); ++i) index_[faces[i].id] = int(i);
        dim_ = 0;
        for (const auto& f : faces) dim_ = std::max(dim_, f.dim);
        build_refcharts();
        build_order();
        build_orientations();
        build_incidence();
        build_compactness();
        build_strata();
        built_ = true;
    }

    bool built() const { return built_; }
    int dim() const { return dim_; }
    bool compact() const { return compact_; }

    const Face& face(int id) const
    {
        auto it = index_.find(id);
        if (it == index_.end()) throw UnknownFace(id);
        return faces[it->second];
    }

    bool has_face(int id) const { return index_.count(id) != 0; }

    std::vector<int> face_ids_of_dim(int d) const
    {
        std::vector<int> out;
        for (const auto& f : faces)
            if (f.dim == d) out.push_back(f.id);
        return out;
    }

    /// Reference chart: the smallest vertex of the face whose coordinate map
    /// covers all the face's vertices.
    int reference_chart(int fid) const
    {
        auto it = refchart_.find(fid);
        if (it == refchart_.end()) throw UnknownFace(fid);
        if (it->second < 0)
            throw std::runtime_error("face " + std::to_string(fid) +
                                     " is not fully covered by any vertex chart");
        return it->second;
    }

    const StarChart& chart(int base) const
    {
        auto it = charts.find(base);
        if (it == charts.end())
            throw std::runtime_error("no chart at vertex " + std::to_string(base));
        return it->second;
    }

    const FaceRecord& record(int chart_base, int fid) const
    {
        const StarChart& c = chart(chart_base);
        auto it = c.records.find(fid);
        if (it == c.records.end())
            throw std::runtime_error("face " + std::to_string(fid) + " missing from chart " +
                                     std::to_string(chart_base));
        return it->second;
    }

    /// Refined sedentarity of a face in a chart, from vertex coordinates:
    /// coordinates at -inf on every vertex of the face.
    std::set<int> sed_pattern(int fid, int chart_base) const
    {
        const StarChart& c = chart(chart_base);
        const Face& f = face(fid);
        std::set<int> pat;
        bool first = true;
        for (int v : f.vertices) {
            auto it = c.coordinates.find(v);
            if (it == c.coordinates.end())
                throw std::runtime_error("vertex " + std::to_string(v) + " not in chart " +
                                         std::to_string(chart_base));
            std::set<int> p;
            for (size_t j = 0; j < it->second.size(); ++j)
                if (it->second[j].minus_inf) p.insert(int(j));
            if (first) { pat = p; first = false; }
            else {
                std::set<int> inter;
                for (int x : pat)
                    if (p.count(x)) inter.insert(x);
                pat = inter;
            }
        }
        return pat;
    }

    // ------------------------------------------------------------------
    // Order relation
    // ------------------------------------------------------------------

    bool leq(int sub, int super) const
    {
        return sub == super || order_.count({sub, super}) != 0;
    }

    const std::vector<int>& subfaces(int fid) const { return below_.at(fid); }   // proper
    const std::vector<int>& cofaces(int fid) const { return above_.at(fid); }    // proper

    std::vector<int> facets_of(int fid, int codim = 1) const
    {
        std::vector<int> out;
        for (int s : below_.at(fid))
            if (face(s).dim == face(fid).dim - codim) out.push_back(s);
        return out;
    }
    std::vector<int> cofacets_of(int fid, int codim = 1) const
    {
        std::vector<int> out;
        for (int s : above_.at(fid))
            if (face(s).dim == face(fid).dim + codim) out.push_back(s);
        return out;
    }

    /// Mobile top-dimensional faces whose closure contains the face.
    std::vector<int> star_facets(int fid) const
    {
        std::vector<int> out;
        for (const auto& g : faces) {
            if (g.dim != dim_ || !g.sedentarity.empty()) continue;
            if (g.id == fid || leq(fid, g.id)) out.push_back(g.id);
        }
        return out;
    }

    // ------------------------------------------------------------------
    // Tangent data
    // ------------------------------------------------------------------

    /// Tangent lattice T_Z of a face in its reference chart (saturated).
    LatticeBasis tangent_lattice(int fid) const
    {
        return tangent_lattice_in(fid, reference_chart(fid));
    }

    LatticeBasis tangent_lattice_in(int fid, int chart_base) const
    {
        const FaceRecord& r = record(chart_base, fid);
        return saturate(LatticeBasis::span(r.generators, chart(chart_base).ambient_dim));
    }

    /**
     * Wave tangent lattice W_Z of a face: intersection of the linear spans
     * of the facet cones adjacent to the face's parent, in the face's
     * reference chart. Contains the divisorial subspace.
     */
    LatticeBasis wave_lattice(int fid) const
    {
        return wave_lattice_in(fid, reference_chart(fid));
    }

    LatticeBasis wave_lattice_in(int fid, int chart_base) const
    {
        const Face& f = face(fid);
        int par = f.parent ? *f.parent : fid;
        auto fac = star_facets(par);
        int n = chart(chart_base).ambient_dim;
        if (fac.empty()) return saturate(LatticeBasis::span({}, n));
        std::optional<LatticeBasis> acc;
        for (int g : fac) {
            LatticeBasis span_g =
                saturate(LatticeBasis::span(record(chart_base, g).generators, n));
            acc = acc ? span_intersection(*acc, span_g) : span_g;
        }
        return *acc;
    }

    /// Divisorial sublattice of W: spanned by -e_j, j in the face's
    /// sedentarity in the given chart.
    LatticeBasis divisorial_lattice(int fid) const
    {
        return divisorial_lattice_in(fid, reference_chart(fid));
    }

    LatticeBasis divisorial_lattice_in(int fid, int chart_base) const
    {
        int n = chart(chart_base).ambient_dim;
        std::vector<IntVec> gens;
        for (int j : record(chart_base, fid).sedentarity) {
            IntVec e(n, Int(0));
            e[j] = -1;
            gens.push_back(e);
        }
        return saturate(LatticeBasis::span(gens, n));
    }

    // ------------------------------------------------------------------
    // Parent and family
    // ------------------------------------------------------------------

    int parent_of(int fid) const
    {
        const Face& f = face(fid);
        return f.parent ? *f.parent : fid;
    }

    /// All faces with the given parent, the parent itself included.
    std::vector<int> family_of(int parent_id) const
    {
        std::vector<int> fam;
        for (const auto& f : faces)
            if (parent_of(f.id) == parent_id) fam.push_back(f.id);
        return fam;
    }

    // ------------------------------------------------------------------
    // Orientation and incidence
    // ------------------------------------------------------------------

    /// Oriented tangent basis of the face in its reference chart.
    const std::vector<RatVec>& orientation_basis(int fid) const { return orient_.at(fid); }

    /// Orientation basis expressed in another chart containing the face.
    std::vector<RatVec> orientation_in(int fid, int chart_base) const
    {
        int rc = reference_chart(fid);
        const auto& basis = orient_.at(fid);
        if (rc == chart_base) return basis;
        std::vector<RatVec> out;
        for (const auto& v : basis) out.push_back(transport_vector(rc, chart_base, v));
        return out;
    }

    /// Incidence sign [super : sub] for a codimension-1 pair.
    int incidence(int super, int sub) const
    {
        auto it = incidence_.find({super, sub});
        if (it == incidence_.end())
            throw std::runtime_error("not a codimension-1 pair: " + std::to_string(super) + "," +
                                     std::to_string(sub));
        return it->second;
    }

    // ------------------------------------------------------------------
    // Transitions
    // ------------------------------------------------------------------

    const Transition* find_transition(int from, int to) const
    {
        if (from == to) return nullptr;
        for (const auto& t : transitions)
            if (t.from_chart == from && t.to_chart == to) return &t;
        return nullptr;
    }

    RatVec transport_vector(int from, int to, const RatVec& v) const
    {
        if (from == to) return v;
        const Transition* t = find_transition(from, to);
        if (!t)
            throw std::runtime_error("missing transition " + std::to_string(from) + " -> " +
                                     std::to_string(to));
        return t->linear.apply(v);
    }

    TPoint transport_point(int from, int to, const TPoint& p) const
    {
        if (from == to) return p;
        const Transition* t = find_transition(from, to);
        if (!t)
            throw std::runtime_error("missing transition " + std::to_string(from) + " -> " +
                                     std::to_string(to));
        return apply_transition(*t, p);
    }

    static TPoint apply_transition(const Transition& t, const TPoint& p)
    {
        int nt = t.linear.rows(), nf = t.linear.cols();
        if (int(p.size()) != nf) throw std::invalid_argument("point size mismatch");
        TPoint out(nt);
        for (int i = 0; i < nt; ++i) {
            Rat acc = t.translation[i];
            bool inf = false;
            for (int j = 0; j < nf; ++j) {
                const Int& l = t.linear(i, j);
                if (l == 0) continue;
                if (p[j].minus_inf) {
                    if (l > 0) inf = true;
                    else throw std::runtime_error("transition undefined on -inf coordinate");
                } else {
                    acc += Rat(l) * p[j].value;
                }
            }
            out[i] = inf ? TCoord::inf() : TCoord(acc);
        }
        return out;
    }

    // ------------------------------------------------------------------
    // Barycentric subdivision
    // ------------------------------------------------------------------

    /// Most sedentary (finite) subface carrying the barycenter of fid.
    int barycenter_carrier(int fid) const { return bc_.at(fid); }

    /// Barycenter of fid as a point of the given chart.
    TPoint barycenter(int fid, int chart_base) const
    {
        int b = bc_.at(fid);
        const Face& f = face(b);
        const StarChart& c = chart(chart_base);
        TPoint acc;
        int count = 0;
        for (int v : f.vertices) {
            auto it = c.coordinates.find(v);
            if (it == c.coordinates.end())
                throw std::runtime_error("vertex " + std::to_string(v) + " not in chart " +
                                         std::to_string(chart_base));
            if (acc.empty()) acc = it->second;
            else {
                for (size_t j = 0; j < acc.size(); ++j) {
                    if (acc[j].minus_inf != it->second[j].minus_inf)
                        throw std::runtime_error("mixed sedentarity among barycenter vertices");
                    if (!acc[j].minus_inf) acc[j].value += it->second[j].value;
                }
            }
            ++count;
        }
        for (auto& x : acc)
            if (!x.minus_inf) x.value /= count;
        return acc;
    }

    /**
     * Nearby mobile proxy for the barycenter of fid: the barycenter itself
     * when mobile, else the mean of the sedentarity-0 vertices of the
     * carrier's parent face. Proxy differences are wave vectors; the
     * ambiguity of the choice is divisorial.
     */
    RatVec mobile_proxy(int fid, int chart_base) const
    {
        int b = bc_.at(fid);
        const Face& fb = face(b);
        const StarChart& c = chart(chart_base);
        std::vector<int> verts;
        if (fb.sedentarity.empty()) {
            verts = fb.vertices;
        } else {
            const Face& par = face(parent_of(b));
            for (int v : par.vertices) {
                auto it = c.coordinates.find(v);
                if (it != c.coordinates.end()) {
                    bool mobile = true;
                    for (const auto& x : it->second)
                        if (x.minus_inf) mobile = false;
                    if (mobile) verts.push_back(v);
                }
            }
            if (verts.empty())
                throw std::runtime_error("no mobile vertices for proxy of face " +
                                         std::to_string(fid));
        }
        RatVec acc(c.ambient_dim, Rat(0));
        for (int v : verts) {
            const TPoint& p = c.coordinates.at(v);
            for (int j = 0; j < c.ambient_dim; ++j) {
                if (p[j].minus_inf)
                    throw std::runtime_error("mobile proxy hit a -inf coordinate");
                acc[j] += p[j].value;
            }
        }
        for (auto& x : acc) x /= int(verts.size());
        return acc;
    }

    /// All canonical barycentric simplices of dimension q.
    std::vector<Flag> bar_simplices(int q) const
    {
        std::vector<Flag> out;
        std::vector<int> chain;
        for (const auto& f : faces) {
            if (!f.finite) continue;
            chain = {f.id};
            extend_flags(chain, q, out);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    /**
     * Canonical form of a constant-sedentarity flag whose minimal element
     * may be infinite: replaces every member by the family member sharing
     * its barycenter. Returns the canonical flag and the set of divisorial
     * chart directions (in the original top's reference chart) projected out.
     */
    std::pair<Flag, std::set<int>> canonicalize_flag(const Flag& fl) const
    {
        Flag cur = fl;
        std::set<int> killed;
        int rc = reference_chart(fl.top());
        while (!face(cur.faces.front()).finite) {
            int lo = cur.faces.front();
            int blo = bc_.at(lo);
            std::set<int> j_all = sed_pattern(blo, rc);
            std::set<int> j_cur = sed_pattern(lo, rc);
            std::set<int> j;
            for (int x : j_all)
                if (!j_cur.count(x)) j.insert(x);
            if (j.empty())
                throw std::runtime_error("flag canonicalization stalled at face " +
                                         std::to_string(lo));
            Flag next;
            for (int fid : cur.faces) next.faces.push_back(family_member(fid, j, rc));
            killed.insert(j.begin(), j.end());
            cur = next;
        }
        return {cur, killed};
    }

    /// The subface of fid whose refined sedentarity (in chart rc, via vertex
    /// coordinates) gains exactly the directions in j.
    int family_member(int fid, const std::set<int>& j, int rc) const
    {
        if (j.empty()) return fid;
        const Face& f = face(fid);
        std::set<int> want = sed_pattern(fid, rc);
        want.insert(j.begin(), j.end());
        for (int s : below_.at(fid)) {
            const Face& g = face(s);
            if (g.dim != f.dim - int(j.size())) continue;
            if (sed_pattern(s, rc) == want) return s;
        }
        throw std::runtime_error("missing family member of face " + std::to_string(fid));
    }

    /// Signed top-dimensional barycentric simplices subdividing a cell, with
    /// orientation relative to the cell's own orientation.
    std::vector<std::pair<Flag, int>> cell_subdivision(int fid) const
    {
        std::vector<std::pair<Flag, int>> out;
        int rc = reference_chart(fid);
        for (const Flag& fl : flags_into(fid)) {
            std::vector<RatVec> dirs;
            TPoint b0 = barycenter(fl.faces[0], rc);
            for (size_t i = 1; i < fl.faces.size(); ++i)
                dirs.push_back(direction_between(b0, barycenter(fl.faces[i], rc)));
            int s = orientation_sign(dirs, orient_.at(fid));
            if (s == 0) throw std::runtime_error("degenerate barycentric simplex");
            out.push_back({fl, s});
        }
        return out;
    }

    /// Direction of the segment between two points of one chart: finite
    /// differences, with -e_j for coordinates that newly reach -inf.
    static RatVec direction_between(const TPoint& a, const TPoint& b)
    {
        RatVec d(a.size(), Rat(0));
        for (size_t j = 0; j < a.size(); ++j) {
            if (a[j].minus_inf && b[j].minus_inf) continue;
            if (a[j].minus_inf && !b[j].minus_inf)
                throw std::runtime_error("direction leaves the infinity boundary");
            if (b[j].minus_inf) d[j] = -1;
            else d[j] = b[j].value - a[j].value;
        }
        return d;
    }

    /// Sign of the ordered basis `dirs` against the reference basis.
    static int orientation_sign(const std::vector<RatVec>& dirs, const std::vector<RatVec>& ref)
    {
        if (dirs.size() != ref.size()) return 0;
        size_t d = ref.size();
        if (d == 0) return 1;
        std::vector<RatVec> m;
        for (const auto& v : dirs) {
            auto c = solve_in_span(ref, v);
            if (!c) return 0;
            m.push_back(*c);
        }
        Rat det(1);
        for (size_t k = 0; k < d; ++k) {
            size_t piv = k;
            while (piv < d && m[piv][k] == 0) ++piv;
            if (piv == d) return 0;
            if (piv != k) { std::swap(m[piv], m[k]); det = -det; }
            det *= m[k][k];
            for (size_t i = k + 1; i < d; ++i) {
                if (m[i][k] == 0) continue;
                Rat f = m[i][k] / m[k][k];
                for (size_t j = k; j < d; ++j) m[i][j] -= f * m[k][j];
            }
        }
        return det > 0 ? 1 : (det < 0 ? -1 : 0);
    }

    // ------------------------------------------------------------------
    // Strata
    // ------------------------------------------------------------------

    int stratum_of(int fid) const { return stratum_.at(fid); }
    int stratum_dim(int sid) const { return stratum_dim_.at(sid); }

    // ------------------------------------------------------------------
    // Validation
    // ------------------------------------------------------------------

    ValidationReport validate() const;

    /// Weighted balancing defect of a mobile codimension-1 face, in the
    /// quotient lattice of its reference chart modulo the face span.
    RatVec balancing_defect(int eid) const
    {
        int rc = reference_chart(eid);
        LatticeBasis te = tangent_lattice(eid);
        IntMatrix q = quotient_map(te);
        RatVec acc(q.rows(), Rat(0));
        for (int d : cofacets_of(eid)) {
            const FaceRecord& r = record(rc, d);
            IntVec eps;
            for (const auto& g : r.generators) {
                IntVec img = q.apply(g);
                bool zero = true;
                for (const auto& v : img)
                    if (v != 0) zero = false;
                if (!zero) { eps = primitive(img); break; }
            }
            if (eps.empty()) throw std::runtime_error("facet does not leave the face span");
            Int w = weights.count(d) ? weights.at(d) : Int(1);
            for (size_t i = 0; i < eps.size(); ++i) acc[i] += Rat(w * eps[i]);
        }
        return acc;
    }

  private:
    bool built_ = false;
    int dim_ = 0;
    bool compact_ = false;
    std::map<int, int> index_;
    std::map<int, int> refchart_;
    std::set<std::pair<int, int>> order_;  // (sub, super), proper
    std::map<int, std::vector<int>> below_, above_;
    std::map<int, std::vector<RatVec>> orient_;
    std::map<std::pair<int, int>, int> incidence_;
    std::map<int, int> bc_;
    std::map<int, int> stratum_;
    std::map<int, int> stratum_dim_;

    void build_refcharts()
    {
        refchart_.clear();
        for (const auto& f : faces) {
            int best = -1;
            std::vector<int> vs = f.vertices;
            std::sort(vs.begin(), vs.end());
            for (int v : vs) {
                auto it = charts.find(v);
                if (it == charts.end()) continue;
                if (!it->second.records.count(f.id)) continue;
                bool covered = true;
                for (int w : f.vertices)
                    if (!it->second.coordinates.count(w)) covered = false;
                if (covered) { best = v; break; }
            }
            refchart_[f.id] = best;
        }
    }

    bool is_subface(const Face& a, const Face& b) const
    {
        if (a.id == b.id) return false;
        if (a.dim >= b.dim) return false;
        for (int v : a.vertices)
            if (std::find(b.vertices.begin(), b.vertices.end(), v) == b.vertices.end())
                return false;
        // common chart: smallest vertex of a carrying records for both
        int c = -1;
        std::vector<int> vs = a.vertices;
        std::sort(vs.begin(), vs.end());
        for (int v : vs) {
            auto it = charts.find(v);
            if (it != charts.end() && it->second.records.count(a.id) &&
                it->second.records.count(b.id)) { c = v; break; }
        }
        if (c == -1) return false;
        const FaceRecord& ra = record(c, a.id);
        const FaceRecord& rb = record(c, b.id);
        for (int s : rb.sedentarity)
            if (!ra.sedentarity.count(s)) return false;
        if (rb.generators.empty()) return ra.generators.empty();
        std::vector<RatVec> bgens;
        for (const auto& g : rb.generators) bgens.push_back(to_rat(g));
        std::vector<RatVec> agens;
        for (const auto& g : ra.generators) agens.push_back(to_rat(g));
        if (rank_of(bgens) != int(bgens.size())) {
            for (const auto& g : agens)
                if (!solve_in_span(bgens, g)) return false;
            return true;
        }
        // simplicial-support test: a must be the subcone on a generator
        // subset of b, not an interior subcone
        std::set<int> support;
        for (const auto& g : agens) {
            auto coords = solve_in_span(bgens, g);
            if (!coords) return false;
            for (size_t i = 0; i < coords->size(); ++i) {
                if ((*coords)[i] < 0) return false;
                if ((*coords)[i] != 0) support.insert(int(i));
            }
        }
        std::vector<RatVec> sup;
        for (int i : support) sup.push_back(bgens[i]);
        if (rank_of(sup) != rank_of(agens)) return false;
        return true;
    }

    void build_order()
    {
        order_.clear();
        below_.clear();
        above_.clear();
        for (const auto& f : faces) { below_[f.id]; above_[f.id]; }
        for (const auto& a : faces)
            for (const auto& b : faces)
                if (is_subface(a, b)) {
                    order_.insert({a.id, b.id});
                    below_[b.id].push_back(a.id);
                    above_[a.id].push_back(b.id);
                }
        bc_.clear();
        for (const auto& f : faces) {
            if (f.finite) { bc_[f.id] = f.id; continue; }
            int best = -1;
            size_t best_sed = 0;
            for (int s : below_[f.id]) {
                const Face& g = face(s);
                if (g.finite && (best == -1 || g.sedentarity.size() > best_sed)) {
                    best = s;
                    best_sed = g.sedentarity.size();
                }
            }
            bc_[f.id] = best;  // -1 reported by the validator
        }
    }

    void build_orientations()
    {
        orient_.clear();
        for (const auto& f : faces) {
            std::vector<RatVec> basis;
            if (refchart_.at(f.id) < 0) { orient_[f.id] = basis; continue; }
            int rc = refchart_.at(f.id);
            const StarChart& c = chart(rc);
            auto try_add = [&](const RatVec& d) {
                if (int(basis.size()) == f.dim) return;
                auto test = basis;
                test.push_back(d);
                if (rank_of(test) == int(test.size())) basis = test;
            };
            auto it0 = c.coordinates.find(f.vertices.front());
            if (it0 != c.coordinates.end()) {
                for (size_t i = 1; i < f.vertices.size(); ++i) {
                    auto iti = c.coordinates.find(f.vertices[i]);
                    if (iti == c.coordinates.end()) continue;
                    try_add(direction_between(it0->second, iti->second));
                }
            }
            auto itr = c.records.find(f.id);
            if (itr != c.records.end())
                for (const auto& g : itr->second.generators) try_add(to_rat(g));
            orient_[f.id] = basis;
        }
    }

    void build_incidence()
    {
        incidence_.clear();
        for (const auto& f : faces)
            for (int s : below_.at(f.id)) {
                const Face& g = face(s);
                if (g.dim != f.dim - 1) continue;
                incidence_[{f.id, s}] = incidence_sign(f.id, s);
            }
    }

    int incidence_sign(int super, int sub) const
    {
        int rc = reference_chart(sub);
        const FaceRecord& rsup = record(rc, super);
        const FaceRecord& rsub = record(rc, sub);
        std::vector<RatVec> sub_basis = orientation_in(sub, rc);
        std::vector<RatVec> sup_basis = orientation_in(super, rc);
        std::optional<RatVec> outward;
        if (rsub.sedentarity.size() > rsup.sedentarity.size()) {
            int j = -1;
            for (int x : rsub.sedentarity)
                if (!rsup.sedentarity.count(x)) { j = x; break; }
            RatVec d(chart(rc).ambient_dim, Rat(0));
            d[j] = -1;
            outward = d;
        } else {
            std::vector<RatVec> span_sub;
            for (const auto& g : rsub.generators) span_sub.push_back(to_rat(g));
            for (const auto& g : rsup.generators) {
                RatVec gg = to_rat(g);
                if (!span_sub.empty() && solve_in_span(span_sub, gg)) continue;
                if (span_sub.empty() && is_zero(gg)) continue;
                RatVec neg = gg;
                for (auto& x : neg) x = -x;
                outward = neg;  // inward generator negated
                break;
            }
        }
        if (!outward) throw std::runtime_error("no outward direction found");
        std::vector<RatVec> combined;
        combined.push_back(*outward);
        for (const auto& v : sub_basis) combined.push_back(v);
        int s = orientation_sign(combined, sup_basis);
        if (s == 0) throw std::runtime_error("degenerate incidence computation");
        return s;
    }

    void build_compactness()
    {
        compact_ = true;
        for (const auto& f : faces) {
            if (f.dim == 0) continue;
            int chi = 0;
            for (int s : below_.at(f.id)) chi += (face(s).dim % 2 == 0) ? 1 : -1;
            int want = 1 + ((f.dim - 1) % 2 == 0 ? 1 : -1);  // chi of S^(d-1)
            if (chi != want) compact_ = false;
        }
    }

    void build_strata()
    {
        std::map<int, int> uf;
        for (const auto& f : faces) uf[f.id] = f.id;
        std::function<int(int)> find = [&](int x) {
            while (uf[x] != x) { uf[x] = uf[uf[x]]; x = uf[x]; }
            return x;
        };
        std::map<int, int> wdim;
        for (const auto& f : faces) {
            try {
                wdim[f.id] = wave_lattice(f.id).rank();
            } catch (const std::exception&) {
                wdim[f.id] = -1;
            }
        }
        for (const auto& pr : order_) {
            int a = pr.first, b = pr.second;
            if (wdim[a] == wdim[b] &&
                face(a).sedentarity.size() == face(b).sedentarity.size())
                uf[find(a)] = find(b);
        }
        stratum_.clear();
        stratum_dim_.clear();
        for (const auto& f : faces) {
            int r = find(f.id);
            stratum_[f.id] = r;
            int& d = stratum_dim_[r];
            d = std::max(stratum_dim_.count(r) ? d : 0, f.dim);
        }
    }

    void extend_flags(std::vector<int>& chain, int q, std::vector<Flag>& out) const
    {
        if (int(chain.size()) == q + 1) {
            out.push_back(Flag{chain});
            return;
        }
        int top = chain.back();
        size_t sed = face(top).sedentarity.size();
        for (int g : above_.at(top)) {
            if (face(g).sedentarity.size() != sed) continue;
            chain.push_back(g);
            extend_flags(chain, q, out);
            chain.pop_back();
        }
    }

    std::vector<Flag> flags_into(int fid) const
    {
        std::vector<Flag> all = bar_simplices(face(fid).dim);
        std::vector<Flag> out;
        for (auto& fl : all)
            if (fl.top() == fid) out.push_back(fl);
        return out;
    }
};

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

inline ValidationReport TropicalSpace::validate() const
{
    ValidationReport rep;
    if (!built_) { rep.add("not-built", "build() was not called"); return rep; }

    for (const auto& f : faces) {
        if (f.vertices.empty()) { rep.add("no-vertices", "face " + std::to_string(f.id)); continue; }
        for (int v : f.vertices)
            if (!index_.count(v))
                rep.add("unknown-vertex",
                        "face " + std::to_string(f.id) + " lists vertex " + std::to_string(v));
        size_t s0 = SIZE_MAX;
        if (index_.count(f.vertices.front())) s0 = face(f.vertices.front()).sedentarity.size();
        for (int v : f.vertices)
            if (index_.count(v) && face(v).sedentarity.size() < s0)
                rep.add("vertex-order", "face " + std::to_string(f.id) +
                                            " does not start with a minimal-sedentarity vertex");
        if (refchart_.at(f.id) < 0) {
            rep.add("coverage", "face " + std::to_string(f.id) +
                                    " is not fully covered by any vertex chart");
            continue;
        }
        if (int(orient_.at(f.id).size()) != f.dim)
            rep.add("orientation",
                    "face " + std::to_string(f.id) + " has no full orientation basis");
    }

    // parent structure and regularity at infinity
    for (const auto& f : faces) {
        if (f.sedentarity.empty()) {
            if (f.parent && *f.parent != f.id)
                rep.add("parent", "mobile face " + std::to_string(f.id) + " has a foreign parent");
            continue;
        }
        if (!f.parent) {
            rep.add("parent", "sedentary face " + std::to_string(f.id) + " lacks a parent");
            continue;
        }
        if (!index_.count(*f.parent)) {
            rep.add("parent", "unknown parent of face " + std::to_string(f.id));
            continue;
        }
        const Face& p = face(*f.parent);
        if (!p.sedentarity.empty())
            rep.add("parent", "parent of face " + std::to_string(f.id) + " is sedentary");
        if (!leq(f.id, p.id))
            rep.add("parent", "face " + std::to_string(f.id) + " is not a subface of its parent");
        if (p.dim != f.dim + int(f.sedentarity.size()))
            rep.add("regularity", "face " + std::to_string(f.id) +
                                      " breaks the sedentarity/dimension rule against its parent");
    }

    // family posets: 2^s members graded binomially, finite apex
    for (const auto& f : faces) {
        if (!f.sedentarity.empty()) continue;
        auto fam = family_of(f.id);
        size_t smax = 0;
        for (int m : fam) smax = std::max(smax, face(m).sedentarity.size());
        if (smax == 0) continue;
        std::map<size_t, int> by_sed;
        bool max_finite = false;
        for (int m : fam) {
            by_sed[face(m).sedentarity.size()]++;
            if (face(m).sedentarity.size() == smax && face(m).finite) max_finite = true;
        }
        bool sizes_ok = true;
        for (size_t k = 0; k <= smax; ++k)
            if (by_sed[k] != int(binom(int(smax), int(k)))) sizes_ok = false;
        if (!sizes_ok)
            rep.add("family", "family of face " + std::to_string(f.id) +
                                  " is not the poset of a simplicial " + std::to_string(smax) +
                                  "-cone");
        if (!max_finite)
            rep.add("family", "maximal sedentary member of family of face " +
                                  std::to_string(f.id) + " is not finite");
    }

    // unique finite apex for infinite faces
    for (const auto& f : faces) {
        if (f.finite) continue;
        if (bc_.at(f.id) == -1) {
            rep.add("barycenter", "infinite face " + std::to_string(f.id) +
                                      " has no finite most-sedentary subface");
            continue;
        }
        size_t smax = face(bc_.at(f.id)).sedentarity.size();
        int count = 0;
        for (int s : below_.at(f.id))
            if (face(s).finite && face(s).sedentarity.size() == smax) ++count;
        if (count != 1)
            rep.add("barycenter", "infinite face " + std::to_string(f.id) +
                                      " has no unique most-sedentary finite subface");
    }

    // intersection closure
    for (const auto& a : faces)
        for (const auto& b : faces) {
            if (a.id >= b.id) continue;
            std::vector<int> common;
            for (const auto& h : faces)
                if (leq(h.id, a.id) && leq(h.id, b.id)) common.push_back(h.id);
            if (common.empty()) continue;
            int maxd = -1, count = 0, top = -1;
            for (int h : common)
                if (face(h).dim > maxd) { maxd = face(h).dim; top = h; }
            for (int h : common)
                if (face(h).dim == maxd) ++count;
            if (count != 1) {
                rep.add("intersection", "faces " + std::to_string(a.id) + " and " +
                                            std::to_string(b.id) +
                                            " meet in more than one maximal common face");
                continue;
            }
            for (int h : common)
                if (h != top && !leq(h, top))
                    rep.add("intersection", "common faces of " + std::to_string(a.id) + "," +
                                                std::to_string(b.id) +
                                                " are not all below their maximum");
        }

    // chart records exist for adjacent faces; record sanity
    for (const auto& [base, c] : charts) {
        if (!index_.count(base)) {
            rep.add("chart", "chart at unknown vertex " + std::to_string(base));
            continue;
        }
        for (const auto& f : faces) {
            bool adjacent = f.id == base || std::find(f.vertices.begin(), f.vertices.end(),
                                                      base) != f.vertices.end();
            if (adjacent && !c.records.count(f.id))
                rep.add("chart-record", "face " + std::to_string(f.id) +
                                            " missing from chart " + std::to_string(base));
        }
        for (const auto& [fid, r] : c.records) {
            if (r.divisorial.size() != r.generators.size())
                rep.add("record", "generator/flag size mismatch in chart " +
                                      std::to_string(base) + " face " + std::to_string(fid));
            for (size_t i = 0; i < r.generators.size(); ++i) {
                const IntVec& g = r.generators[i];
                if (i < r.divisorial.size() && r.divisorial[i]) {
                    int nonzero = -1;
                    bool unit = true;
                    for (size_t j = 0; j < g.size(); ++j)
                        if (g[j] != 0) {
                            if (nonzero != -1 || g[j] != -1) unit = false;
                            nonzero = int(j);
                        }
                    if (!unit || nonzero == -1)
                        rep.add("divisorial",
                                "divisorial generator of face " + std::to_string(fid) +
                                    " in chart " + std::to_string(base) + " is not -e_j");
                }
                if (index_.count(fid) && face(fid).dim == 1 && primitive(g) != g)
                    rep.add("primitive", "edge generator of face " + std::to_string(fid) +
                                             " in chart " + std::to_string(base) +
                                             " is not primitive");
            }
        }
    }

    // transitions: span naturality, coordinate compatibility, cocycle rule
    for (const auto& [a, ca] : charts)
        for (const auto& [b, cb] : charts) {
            if (a == b) continue;
            std::vector<int> shared;
            for (const auto& [fid, r] : ca.records)
                if (cb.records.count(fid)) shared.push_back(fid);
            if (shared.empty()) continue;
            const Transition* t = find_transition(a, b);
            if (!t) {
                rep.add("transition-missing", "charts " + std::to_string(a) + "," +
                                                  std::to_string(b) +
                                                  " share faces but have no transition");
                continue;
            }
            for (int fid : shared) {
                const FaceRecord& ra = ca.records.at(fid);
                const FaceRecord& rb = cb.records.at(fid);
                std::vector<IntVec> ia;
                for (const auto& g : ra.generators) ia.push_back(t->linear.apply(g));
                LatticeBasis la = saturate(LatticeBasis::span(ia, cb.ambient_dim));
                LatticeBasis lb =
                    saturate(LatticeBasis::span(rb.generators, cb.ambient_dim));
                if (!(la == lb))
                    rep.add("transition-naturality",
                            "tangent span of face " + std::to_string(fid) +
                                " does not match across " + std::to_string(a) + " -> " +
                                std::to_string(b));
                for (int v : face(fid).vertices) {
                    auto iav = ca.coordinates.find(v);
                    auto ibv = cb.coordinates.find(v);
                    if (iav == ca.coordinates.end() || ibv == cb.coordinates.end()) continue;
                    try {
                        TPoint img = apply_transition(*t, iav->second);
                        if (!(img == ibv->second))
                            rep.add("transition-coords",
                                    "vertex " + std::to_string(v) + " disagrees across " +
                                        std::to_string(a) + " -> " + std::to_string(b));
                    } catch (const std::exception& e) {
                        rep.add("transition-domain",
                                std::string(e.what()) + " for vertex " + std::to_string(v));
                    }
                }
            }
        }
    for (const auto& [a, ca] : charts)
        for (const auto& [b, cb] : charts)
            for (const auto& [c, cc] : charts) {
                if (a >= b || b >= c) continue;
                bool share = false;
                for (const auto& [fid, r] : ca.records)
                    if (cb.records.count(fid) && cc.records.count(fid)) share = true;
                if (!share) continue;
                // check all six orderings via the two independent ones
                auto check = [&](int x, int y, int z) {
                    const Transition* txy = find_transition(x, y);
                    const Transition* tyz = find_transition(y, z);
                    const Transition* txz = find_transition(x, z);
                    if (!txy || !tyz || !txz) return;
                    IntMatrix comp = tyz->linear * txy->linear;
                    if (!(comp == txz->linear)) {
                        rep.add("cocycle", "linear parts fail the composition rule on charts " +
                                               std::to_string(x) + "," + std::to_string(y) + "," +
                                               std::to_string(z));
                        return;
                    }
                    RatVec tr = tyz->linear.apply(txy->translation);
                    for (size_t i = 0; i < tr.size(); ++i) tr[i] += tyz->translation[i];
                    bool same = tr.size() == txz->translation.size();
                    for (size_t i = 0; same && i < tr.size(); ++i)
                        if (tr[i] != txz->translation[i]) same = false;
                    if (!same)
                        rep.add("cocycle", "translations fail the composition rule on charts " +
                                               std::to_string(x) + "," + std::to_string(y) + "," +
                                               std::to_string(z));
                };
                check(a, b, c);
                check(b, c, a);
                check(c, a, b);
            }

    // balancing at mobile codimension-1 faces
    for (const auto& e : faces) {
        if (!e.sedentarity.empty() || e.dim != dim_ - 1) continue;
        try {
            if (!is_zero(balancing_defect(e.id)))
                rep.add("balancing", "face " + std::to_string(e.id) +
                                         " violates the (weighted) balancing condition");
        } catch (const std::exception& ex) {
            rep.add("balancing", "face " + std::to_string(e.id) + ": " + ex.what());
        }
    }

    // boundary-squared on the constant-coefficient complex
    for (int q = 2; q <= dim_; ++q)
        for (int t : face_ids_of_dim(q)) {
            std::map<int, int> acc;
            for (int m : facets_of(t))
                for (int b : facets_of(m)) acc[b] += incidence(t, m) * incidence(m, b);
            for (const auto& [b, v] : acc)
                if (v != 0)
                    rep.add("ddzero", "d^2 != 0 from face " + std::to_string(t) + " to face " +
                                          std::to_string(b));
        }

    for (const auto& [fid, w] : weights)
        if (w <= 0) rep.add("weight", "non-positive weight on face " + std::to_string(fid));

    return rep;
}

}  // namespace tropicore
