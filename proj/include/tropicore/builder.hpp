/**
 * Helpers for assembling a TropicalSpace from vertex coordinates: face
 * records (cone generators, divisorial flags, per-chart sedentarity),
 * finiteness, and parent faces are all derived rather than entered by hand.
 *
 * A face's covering chart is the chart at its smallest vertex whose
 * coordinate map contains every vertex of the face; generator data is
 * computed there and transported to the other adjacent charts.
 */

#pragma once

#include "space.hpp"

namespace tropicore {

namespace detail {

inline std::set<int> pattern_of(const TPoint& p)
{
    std::set<int> s;
    for (size_t j = 0; j < p.size(); ++j)
        if (p[j].minus_inf) s.insert(int(j));
    return s;
}

/// Chart at the smallest vertex of f whose coordinates cover all vertices.
inline int covering_chart(const TropicalSpace& x, const Face& f)
{
    std::vector<int> vs = f.vertices;
    std::sort(vs.begin(), vs.end());
    for (int v : vs) {
        auto it = x.charts.find(v);
        if (it == x.charts.end()) continue;
        bool ok = true;
        for (int w : f.vertices)
            if (!it->second.coordinates.count(w)) ok = false;
        if (ok) return v;
    }
    throw std::runtime_error("no covering chart for face " + std::to_string(f.id));
}

/// Generators of the tangent cone of f at vertex `base`, computed in a chart
/// whose coordinates cover f. Divisorial axes of the base beyond the face's
/// sedentarity contribute -e_j generators.
inline std::pair<std::vector<IntVec>, std::set<int>> cone_at(const StarChart& c, const Face& f,
                                                             int base)
{
    const TPoint& p0 = c.coordinates.at(base);
    std::set<int> base_pat = pattern_of(p0);
    std::set<int> face_sed;
    bool first = true;
    for (int w : f.vertices) {
        std::set<int> pw = pattern_of(c.coordinates.at(w));
        if (first) { face_sed = pw; first = false; }
        else {
            std::set<int> inter;
            for (int j : face_sed)
                if (pw.count(j)) inter.insert(j);
            face_sed = inter;
        }
    }
    std::vector<IntVec> gens;
    auto push_unique = [&](const IntVec& g) {
        bool zero = true;
        for (const auto& v : g)
            if (v != 0) zero = false;
        if (zero) return;
        for (const auto& h : gens)
            if (h == g) return;
        gens.push_back(g);
    };
    for (int w : f.vertices) {
        if (w == base) continue;
        const TPoint& pw = c.coordinates.at(w);
        std::set<int> pat = pattern_of(pw);
        bool comparable = true;
        for (int j : base_pat)
            if (!pat.count(j)) comparable = false;
        if (!comparable) continue;  // direction back toward the mobile part
        push_unique(primitive(TropicalSpace::direction_between(p0, pw)));
    }
    for (int j : base_pat)
        if (!face_sed.count(j)) {
            IntVec e(c.ambient_dim, Int(0));
            e[j] = -1;
            push_unique(e);
        }
    // prune generators that are nonnegative combinations of the others
    for (size_t i = 0; i < gens.size();) {
        std::vector<RatVec> rest;
        for (size_t k = 0; k < gens.size(); ++k)
            if (k != i) rest.push_back(to_rat(gens[k]));
        bool redundant = false;
        if (rank_of(rest) == int(rest.size())) {
            auto sol = solve_in_span(rest, to_rat(gens[i]));
            if (sol) {
                redundant = true;
                for (const auto& x : *sol)
                    if (x < 0) redundant = false;
            }
        }
        if (redundant) gens.erase(gens.begin() + i);
        else ++i;
    }
    return {gens, face_sed};
}

}  // namespace detail

/**
 * Fills face records for every chart, face sedentarity/finiteness, and
 * parent links. Vertex coordinates and transitions must already be present.
 */
inline void derive_structure(TropicalSpace& x)
{
    using detail::pattern_of;

    // face sedentarity and finiteness from the covering chart
    for (auto& f : x.faces) {
        int cov = detail::covering_chart(x, f);
        const StarChart& c = x.charts.at(cov);
        auto [gens, sed] = detail::cone_at(c, f, cov);
        f.sedentarity = sed;
        bool all_same = true;
        for (int w : f.vertices)
            if (pattern_of(c.coordinates.at(w)) != sed) all_same = false;
        // span of vertex differences, measured from a minimal-sedentarity vertex
        int w0 = -1;
        for (int w : f.vertices)
            if (pattern_of(c.coordinates.at(w)) == sed) { w0 = w; break; }
        std::vector<RatVec> dirs;
        if (w0 != -1) {
            const TPoint& p0 = c.coordinates.at(w0);
            for (int w : f.vertices) {
                if (w == w0) continue;
                if (pattern_of(c.coordinates.at(w)) != sed) continue;
                dirs.push_back(TropicalSpace::direction_between(p0, c.coordinates.at(w)));
            }
        }
        f.finite = all_same && rank_of(dirs) == f.dim;
    }

    // records, per chart
    for (auto& [base, c] : x.charts) {
        c.infinity_coords = pattern_of(c.coordinates.at(base));
        for (const auto& f : x.faces) {
            bool adjacent = f.id == base || std::find(f.vertices.begin(), f.vertices.end(),
                                                      base) != f.vertices.end();
            if (!adjacent) continue;
            if (c.records.count(f.id)) continue;  // pre-seeded (fan-style faces)
            int cov = detail::covering_chart(x, f);
            const StarChart& gamma = x.charts.at(cov);
            auto [gens_g, sed_g] = detail::cone_at(gamma, f, base);
            FaceRecord rec;
            if (cov == base) {
                rec.generators = gens_g;
                rec.sedentarity = sed_g;
            } else {
                const Transition* t = x.find_transition(cov, base);
                if (!t)
                    throw std::runtime_error("derive_structure: missing transition " +
                                             std::to_string(cov) + " -> " +
                                             std::to_string(base));
                std::set<int> base_pat_target = pattern_of(c.coordinates.at(base));
                // sedentarity axes of the face map monomially
                for (int j : sed_g) {
                    IntVec e(gamma.ambient_dim, Int(0));
                    e[j] = -1;
                    IntVec img = t->linear.apply(e);
                    int jj = -1;
                    for (size_t k = 0; k < img.size(); ++k)
                        if (base_pat_target.count(int(k)) && img[k] != 0) {
                            if (jj != -1 || img[k] != -1)
                                throw std::runtime_error(
                                    "derive_structure: non-monomial divisorial transport");
                            jj = int(k);
                        }
                    if (jj == -1)
                        throw std::runtime_error(
                            "derive_structure: lost divisorial axis in transport");
                    rec.sedentarity.insert(jj);
                }
                std::set<int> src_pat = pattern_of(gamma.coordinates.at(base));
                for (const auto& g : gens_g) {
                    IntVec img = t->linear.apply(g);
                    bool div_src = false;
                    for (size_t k = 0; k < g.size(); ++k)
                        if (g[k] != 0 && src_pat.count(int(k))) div_src = true;
                    IntVec out(c.ambient_dim, Int(0));
                    for (size_t k = 0; k < img.size(); ++k) {
                        bool div_axis = base_pat_target.count(int(k)) != 0;
                        if (div_src == div_axis) out[k] = img[k];
                    }
                    rec.generators.push_back(primitive(out));
                }
            }
            // divisorial flags: -e_j generators along axes where the face
            // actually reaches -inf in this chart
            std::set<int> reach;
            for (int w : f.vertices) {
                auto it = c.coordinates.find(w);
                if (it == c.coordinates.end()) continue;
                for (int j : pattern_of(it->second))
                    if (!rec.sedentarity.count(j)) reach.insert(j);
            }
            for (const auto& g : rec.generators) {
                int jj = -1;
                bool unit = true;
                for (size_t k = 0; k < g.size(); ++k)
                    if (g[k] != 0) {
                        if (jj != -1 || g[k] != -1) unit = false;
                        jj = int(k);
                    }
                rec.divisorial.push_back(unit && jj != -1 && reach.count(jj));
            }
            c.records[f.id] = rec;
        }
    }

    // parents
    for (auto& f : x.faces) {
        if (f.sedentarity.empty()) { f.parent = f.id; continue; }
        std::optional<int> parent;
        for (const auto& e : x.faces) {
            if (!e.sedentarity.empty()) continue;
            if (e.dim != f.dim + int(f.sedentarity.size())) continue;
            bool sub = true;
            for (int v : f.vertices)
                if (std::find(e.vertices.begin(), e.vertices.end(), v) == e.vertices.end())
                    sub = false;
            if (sub) {
                if (parent)
                    throw std::runtime_error("ambiguous parent for face " +
                                             std::to_string(f.id));
                parent = e.id;
            }
        }
        if (!parent)
            throw std::runtime_error("no parent found for face " + std::to_string(f.id));
        f.parent = parent;
    }
}

/// Convenience: a mobile point with the given rational coordinates.
inline TPoint pt(const std::vector<Rat>& v)
{
    TPoint p(v.size());
    for (size_t i = 0; i < v.size(); ++i) p[i] = TCoord(v[i]);
    return p;
}

/// A point with -inf at the listed coordinates and the given values elsewhere.
inline TPoint pt_inf(const std::vector<Rat>& v, const std::set<int>& inf)
{
    TPoint p(v.size());
    for (size_t i = 0; i < v.size(); ++i)
        p[i] = inf.count(int(i)) ? TCoord::inf() : TCoord(v[i]);
    return p;
}

inline IntMatrix mat1(Int a)
{
    IntMatrix m(1, 1);
    m(0, 0) = a;
    return m;
}

}  // namespace tropicore
