/**
 * The eigenwave cocycle, cap products of wave cochains with barycentric
 * chains, the two cellular descriptions of the eigenwave action, induced
 * maps on homology, and deformations of the tropical structure by wave
 * 1-cocycles on chart overlaps.
 *
 * Vertex-order conventions: a flag simplex is canonically ordered by
 * increasing face dimension. Capping in decreasing order reverses the list;
 * the chain is rewritten through the reversal permutation signs so that both
 * conventions act on the same underlying chains.
 */

#pragma once

#include "homology.hpp"

namespace tropicore {

struct NotACocycle : std::runtime_error
{
    explicit NotACocycle(const std::string& w) : std::runtime_error("not a cocycle: " + w) {}
};

struct DeformationTooLarge : std::runtime_error
{
    explicit DeformationTooLarge(const std::string& w)
        : std::runtime_error("deformation breaks the space: " + w)
    {
    }
};

struct IdentityFails : std::runtime_error
{
    explicit IdentityFails(const std::string& w)
        : std::runtime_error("chain identity fails: " + w)
    {
    }
};

enum class VertexOrder { Increasing, Decreasing };

/// A wave cochain on barycentric simplices: flag -> ambient wedge
/// coordinates of a W_r value, in the reference chart of the flag's top.
struct WaveCocycle
{
    int r = 1;  // cochain degree: values sit on barycentric r-simplices
    int k = 1;  // wave degree: values are ambient Lambda^k wedge coordinates
    std::map<Flag, RatVec> values;
};

// ---------------------------------------------------------------------------
// The eigenwave
// ---------------------------------------------------------------------------

/// Displacement of barycenter proxies along a flag pair, in the given chart.
inline RatVec proxy_displacement(const TropicalSpace& x, int from_face, int to_face, int chart)
{
    RatVec a = x.mobile_proxy(from_face, chart);
    RatVec b = x.mobile_proxy(to_face, chart);
    return b - a;
}

/**
 * The canonical wave 1-cocycle: on a barycentric 1-simplex its value is the
 * displacement between the barycenter proxies of its two faces. Sedentary
 * barycenters use their mobile proxies; the ambiguity is divisorial.
 */
inline WaveCocycle eigenwave(const TropicalSpace& x)
{
    WaveCocycle phi;
    phi.r = 1;
    phi.k = 1;
    for (const Flag& fl : x.bar_simplices(1)) {
        int rc = x.reference_chart(fl.top());
        phi.values[fl] = proxy_displacement(x, fl.faces[0], fl.faces[1], rc);
    }
    return phi;
}

/// Exact coboundary of the eigenwave on barycentric 2-simplices (telescoping
/// makes it vanish identically with the canonical proxy choice).
inline bool eigenwave_is_closed(const TropicalSpace& x)
{
    for (const Flag& fl : x.bar_simplices(2)) {
        int rc = x.reference_chart(fl.top());
        RatVec d = proxy_displacement(x, fl.faces[1], fl.faces[2], rc) -
                   proxy_displacement(x, fl.faces[0], fl.faces[2], rc) +
                   proxy_displacement(x, fl.faces[0], fl.faces[1], rc);
        if (!is_zero(d)) return false;
    }
    return true;
}

/// phi^k value on an ordered list of faces: the wedge of consecutive proxy
/// displacements, in the given chart.
inline RatVec phi_power_value(const TropicalSpace& x, const std::vector<int>& ordered, int chart)
{
    int n = x.chart(chart).ambient_dim;
    std::vector<RatVec> steps;
    for (size_t i = 0; i + 1 < ordered.size(); ++i)
        steps.push_back(proxy_displacement(x, ordered[i], ordered[i + 1], chart));
    return wedge_of_vectors(steps, n);
}

/// Coboundary of a wave 1-cochain, as a 2-cochain on barycentric simplices.
inline WaveCocycle coboundary(const TropicalSpace& x, const WaveCocycle& alpha)
{
    if (alpha.r != 1) throw std::invalid_argument("coboundary implemented for degree 1");
    auto value_on = [&](int a, int b, int chart) {
        Flag key{{a, b}};
        auto it = alpha.values.find(key);
        if (it == alpha.values.end())
            throw std::invalid_argument("cochain missing a 1-simplex value");
        int stored = x.reference_chart(b);
        if (stored == chart) return it->second;
        const Transition* t = x.find_transition(stored, chart);
        if (!t) throw std::runtime_error("missing transition for cochain transport");
        return t->linear.apply(it->second);
    };
    WaveCocycle d;
    d.r = 2;
    d.k = 1;
    for (const Flag& fl : x.bar_simplices(2)) {
        int rc = x.reference_chart(fl.top());
        RatVec v = value_on(fl.faces[1], fl.faces[2], rc) -
                   value_on(fl.faces[0], fl.faces[2], rc) +
                   value_on(fl.faces[0], fl.faces[1], rc);
        d.values[fl] = v;
    }
    return d;
}

// ---------------------------------------------------------------------------
// Cap products
// ---------------------------------------------------------------------------

namespace detail {

inline int reversal_sign(int q) { return (q * (q + 1) / 2) % 2 == 0 ? 1 : -1; }

/// Adds coef on the canonical form of a (possibly non-canonical) flag,
/// transporting the coefficient through the divisorial projection.
inline void add_canonical(FiberCache& fc, Chain& out, const Flag& fl, int p, RatVec coef)
{
    const TropicalSpace& x = fc.space();
    Flag canon = fl;
    if (!x.face(fl.faces.front()).finite) {
        auto [cfl, killed] = x.canonicalize_flag(fl);
        coef = fc.iota_matrix(fl.top(), cfl.top(), p).apply(coef);
        canon = cfl;
    }
    if (is_zero(coef)) return;
    auto it = out.terms.find(canon);
    if (it == out.terms.end()) out.terms[canon] = coef;
    else {
        for (size_t i = 0; i < coef.size(); ++i) it->second[i] += coef[i];
        if (is_zero(it->second)) out.terms.erase(it);
    }
}

}  // namespace detail

/**
 * Cap product of a wave r-cochain with a barycentric F_p chain, front-face
 * evaluation in the chosen vertex order. The cochain is evaluated through
 * `value(front_faces, chart)`, which must return ambient wedge coordinates
 * of a W_r element in the given chart.
 */
template <typename CochainEval>
inline Chain cap_generic(FiberCache& fc, int r, int k, CochainEval value, const Chain& gamma,
                         VertexOrder order)
{
    if (gamma.sys != System::F || !gamma.barycentric)
        throw std::invalid_argument("cap expects a barycentric framing chain");
    const TropicalSpace& x = fc.space();
    Chain out;
    out.sys = System::F;
    out.coef_degree = gamma.coef_degree + k;
    out.q = gamma.q - r;
    out.barycentric = true;
    int q = gamma.q;
    if (r > q) return out;  // front face does not exist: the cap vanishes
    for (const auto& [fl, beta] : gamma.terms) {
        int rc = x.reference_chart(fl.top());
        std::vector<int> faces = fl.faces;
        RatVec coef;
        Flag back;
        int sign = 1;
        if (order == VertexOrder::Increasing) {
            std::vector<int> front(faces.begin(), faces.begin() + r + 1);
            RatVec w = value(front, rc);
            coef = fc.wedge_action(fl.top(), w, k, beta, gamma.coef_degree);
            back.faces.assign(faces.begin() + r, faces.end());
        } else {
            std::vector<int> rev(faces.rbegin(), faces.rend());
            std::vector<int> front(rev.begin(), rev.begin() + r + 1);
            RatVec w = value(front, rc);
            coef = fc.wedge_action(fl.top(), w, k, beta, gamma.coef_degree);
            back.faces.assign(faces.begin(), faces.end() - r);
            sign = detail::reversal_sign(q) * detail::reversal_sign(q - r);
        }
        for (auto& c : coef) c *= sign;
        detail::add_canonical(fc, out, back, out.coef_degree, coef);
    }
    return out;
}

/// Cap with a stored wave cochain (increasing order).
inline Chain cap(FiberCache& fc, const WaveCocycle& alpha, const Chain& gamma)
{
    const TropicalSpace& x = fc.space();
    return cap_generic(
        fc, alpha.r, alpha.k,
        [&](const std::vector<int>& front, int chart) {
            Flag key{front};
            auto it = alpha.values.find(key);
            if (it == alpha.values.end())
                throw std::invalid_argument("cochain has no value on a required simplex");
            int stored = x.reference_chart(key.top());
            if (stored == chart) return it->second;
            const Transition* t = x.find_transition(stored, chart);
            if (!t) throw std::runtime_error("missing transition for cochain transport");
            return exterior_power_map(t->linear, alpha.k).apply(it->second);
        },
        gamma, VertexOrder::Increasing);
}

/// Cap with phi^k in the chosen vertex order.
inline Chain cap_phi_power(FiberCache& fc, int k, const Chain& gamma, VertexOrder order)
{
    const TropicalSpace& x = fc.space();
    if (k == 0) return gamma;
    return cap_generic(
        fc, k, k,
        [&](const std::vector<int>& front, int chart) {
            return phi_power_value(x, front, chart);
        },
        gamma, order);
}

// ---------------------------------------------------------------------------
// Cellular chains, embeddings, and the two descriptions
// ---------------------------------------------------------------------------

/// Barycentric image of a cellular framing chain: every simplex of a cell's
/// subdivision inherits the cell's coefficient with the subdivision sign.
inline Chain to_barycentric(FiberCache& fc, const Chain& cellular)
{
    if (cellular.barycentric) return cellular;
    const TropicalSpace& x = fc.space();
    Chain out;
    out.sys = cellular.sys;
    out.coef_degree = cellular.coef_degree;
    out.q = cellular.q;
    out.barycentric = true;
    for (const auto& [key, beta] : cellular.terms) {
        int cell = key.top();
        for (const auto& [fl, sign] : x.cell_subdivision(cell)) {
            RatVec c = beta;
            for (auto& v : c) v *= sign;
            out.terms[fl] = c;
        }
    }
    return out;
}

/// Collapses a barycentric chain supported on whole cell subdivisions back to
/// cellular form; throws when the coefficients are not constant per cell.
inline Chain to_cellular(FiberCache& fc, const Chain& bar)
{
    const TropicalSpace& x = fc.space();
    Chain out;
    out.sys = bar.sys;
    out.coef_degree = bar.coef_degree;
    out.q = bar.q;
    out.barycentric = false;
    std::set<int> cells;
    for (const auto& [fl, c] : bar.terms) cells.insert(fl.top());
    for (int cell : cells) {
        int r = fc.framing(cell, bar.coef_degree).carrier.rank();
        std::optional<RatVec> common;
        for (const auto& [fl, sign] : x.cell_subdivision(cell)) {
            auto it = bar.terms.find(fl);
            RatVec c = it == bar.terms.end() ? RatVec(r, Rat(0)) : it->second;
            for (auto& v : c) v *= sign;
            if (!common) common = c;
            else if (!(c == *common))
                throw IdentityFails("chain is not constant on the subdivision of cell " +
                                    std::to_string(cell));
        }
        if (common && !is_zero(*common)) out.terms[Chain::cell(cell)] = *common;
    }
    return out;
}

/**
 * The two cellular realizations of the eigenwave action on a cellular cycle.
 * Description 1 caps in increasing vertex order and is supported on the dual
 * subdivision; description 2 caps in decreasing order and collapses to the
 * (q-k)-skeleton in cellular form.
 */
inline Chain eigenwave_cap_cellular(FiberCache& fc, const Chain& gamma, int k, int description)
{
    // the input must be a cellular cycle
    ChainComplexData cc = cellular_complex(fc, System::F, gamma.coef_degree);
    if (!is_zero(cc.apply_out(gamma.q, cc.assemble(gamma.q, gamma.terms))))
        throw NotACycle("eigenwave action needs a cellular cycle");
    Chain bar = to_barycentric(fc, gamma);
    if (description == 1) return cap_phi_power(fc, k, bar, VertexOrder::Increasing);
    if (description == 2) {
        Chain d2 = cap_phi_power(fc, k, bar, VertexOrder::Decreasing);
        Chain cell = to_cellular(fc, d2);
        return cell;
    }
    throw std::invalid_argument("description must be 1 or 2");
}

// ---------------------------------------------------------------------------
// Induced maps on homology
// ---------------------------------------------------------------------------

struct InducedMap
{
    int p = 0, q = 0, k = 0;
    int source_betti = 0, target_betti = 0;
    std::vector<RatVec> matrix;  // rows: target coordinates of each source basis image
    int rank = 0;
    bool isomorphism = false;
};

/// Matrix of phi^k on H_q(F_p) -> H_{q-k}(F_{p+k}) over Q, in the canonical
/// free-part bases of the barycentric complexes.
inline InducedMap induced_homology_map(FiberCache& fc, int p, int q, int k)
{
    InducedMap m;
    m.p = p;
    m.q = q;
    m.k = k;
    ChainComplexData src = barycentric_complex(fc, System::F, p);
    ChainComplexData dst = barycentric_complex(fc, System::F, p + k);
    HomologyBasis bsrc = homology_basis(src, q);
    HomologyBasis bdst = homology_basis(dst, q - k);
    m.source_betti = bsrc.betti;
    m.target_betti = bdst.betti;
    std::vector<RatVec> rows;
    for (const auto& rep : bsrc.reps) {
        Chain gamma;
        gamma.sys = System::F;
        gamma.coef_degree = p;
        gamma.q = q;
        gamma.barycentric = true;
        gamma.terms = src.scatter(q, rep);
        Chain img = cap_phi_power(fc, k, gamma, VertexOrder::Increasing);
        RatVec cls = bdst.class_of(dst.assemble(q - k, img.terms));
        rows.push_back(cls);
    }
    m.matrix = rows;
    m.rank = rank_of(rows);
    m.isomorphism = (m.source_betti == m.target_betti) && m.rank == m.source_betti;
    return m;
}

// ---------------------------------------------------------------------------
// Deformations by wave 1-cocycles on chart overlaps
// ---------------------------------------------------------------------------

/**
 * Deforms the tropical structure: each transition's translation is shifted
 * by eps times the cocycle value on its chart pair (value given in the
 * source chart's coordinates), vertex coordinates are re-solved from each
 * vertex's own chart, and the derived structure is rebuilt. Throws
 * NotACocycle for inconsistent input and DeformationTooLarge when the
 * deformed space fails validation.
 */
inline TropicalSpace deform(const TropicalSpace& x,
                            const std::map<std::pair<int, int>, RatVec>& tau, const Rat& eps)
{
    // antisymmetry: tau_{ba} = -L_{ab} tau_{ab} whenever both are given
    for (const auto& [key, v] : tau) {
        auto rev = tau.find({key.second, key.first});
        if (rev == tau.end()) continue;
        const Transition* t = x.find_transition(key.first, key.second);
        if (!t) throw NotACocycle("cocycle value on a pair without transition");
        RatVec img = t->linear.apply(v);
        for (size_t i = 0; i < img.size(); ++i)
            if (img[i] + rev->second[i] != 0) throw NotACocycle("antisymmetry fails");
    }
    TropicalSpace y = x;
    for (auto& t : y.transitions) {
        auto it = tau.find({t.from_chart, t.to_chart});
        if (it == tau.end()) continue;
        RatVec shift = t.linear.apply(it->second);
        for (size_t i = 0; i < shift.size(); ++i) t.translation[i] += eps * shift[i];
    }
    // re-solve coordinates: each vertex keeps its position in its own chart;
    // foreign positions are recomputed through the new transitions
    for (auto& [base, c] : y.charts) {
        std::map<int, TPoint> fresh;
        for (const auto& [v, old] : c.coordinates) {
            if (v == base) { fresh[v] = old; continue; }
            const Transition* t = y.find_transition(v, base);
            if (!t) { fresh[v] = old; continue; }
            const TPoint& own = x.charts.at(v).coordinates.at(v);
            fresh[v] = TropicalSpace::apply_transition(*t, own);
        }
        c.coordinates = fresh;
        c.records.clear();
    }
    try {
        derive_structure(y);
        y.build();
    } catch (const std::exception& e) {
        throw DeformationTooLarge(e.what());
    }
    auto rep = y.validate();
    if (!rep.ok()) {
        std::string what;
        for (const auto& v : rep.violations) what += v.code + " ";
        if (what.find("cocycle") != std::string::npos)
            throw NotACocycle("deformed transitions break the composition rule");
        throw DeformationTooLarge(what);
    }
    return y;
}

/// Largest feasible epsilon along a cocycle direction, found by bisection
/// between a feasible and an infeasible bound. Reports the best found value
/// without claiming sharpness.
inline Rat deform_feasible_epsilon(const TropicalSpace& x,
                                   const std::map<std::pair<int, int>, RatVec>& tau, Rat hi,
                                   int steps = 12)
{
    Rat lo(0);
    for (int i = 0; i < steps; ++i) {
        Rat mid = (lo + hi) / 2;
        try {
            deform(x, tau, mid);
            lo = mid;
        } catch (const std::exception&) {
            hi = mid;
        }
    }
    return lo;
}

}  // namespace tropicore
