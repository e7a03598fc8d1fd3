/**
 * Bundled example spaces. Each builder returns a fully built TropicalSpace;
 * the CLI exposes them through `example --name ...`.
 */

#pragma once

#include "builder.hpp"

namespace tropicore {
namespace examples {

/// The tropical line in R^2: one vertex, rays (1,0), (0,1), (-1,-1).
inline TropicalSpace line_r2(bool balanced = true)
{
    TropicalSpace x;
    x.faces.push_back({0, 0, {0}, {}, std::nullopt, true});
    std::vector<IntVec> rays = {{Int(1), Int(0)}, {Int(0), Int(1)}, {Int(-1), Int(-1)}};
    if (!balanced) rays.pop_back();
    for (size_t i = 0; i < rays.size(); ++i)
        x.faces.push_back({int(i) + 1, 1, {0}, {}, std::nullopt, false});
    StarChart c;
    c.vertex = 0;
    c.ambient_dim = 2;
    c.coordinates[0] = pt({0, 0});
    for (size_t i = 0; i < rays.size(); ++i) {
        FaceRecord r;
        r.generators = {rays[i]};
        r.divisorial = {false};
        c.records[int(i) + 1] = r;
    }
    c.records[0] = FaceRecord{};
    x.charts[0] = c;
    derive_structure(x);
    x.build();
    return x;
}

/// Circle of total length l, subdivided into three equal edges.
inline TropicalSpace elliptic(const Rat& l)
{
    TropicalSpace x;
    Rat step = l / 3;
    for (int i = 0; i < 3; ++i) x.faces.push_back({i, 0, {i}, {}, std::nullopt, true});
    x.faces.push_back({3, 1, {0, 1}, {}, std::nullopt, true});
    x.faces.push_back({4, 1, {1, 2}, {}, std::nullopt, true});
    x.faces.push_back({5, 1, {2, 0}, {}, std::nullopt, true});
    for (int i = 0; i < 3; ++i) {
        StarChart c;
        c.vertex = i;
        c.ambient_dim = 1;
        c.coordinates[i] = pt({0});
        c.coordinates[(i + 1) % 3] = pt({step});
        c.coordinates[(i + 2) % 3] = pt({-step});
        x.charts[i] = c;
    }
    for (int i = 0; i < 3; ++i) {
        int j = (i + 1) % 3;
        x.transitions.push_back({i, j, mat1(1), {-step}});
        x.transitions.push_back({j, i, mat1(1), {step}});
    }
    derive_structure(x);
    x.build();
    return x;
}

/**
 * Nodal genus-2 curve: two loops glued at a 4-valent node. At the node the
 * four primitive directions pair into two straight branches; each loop
 * leaves along one axis and returns along the other.
 */
inline TropicalSpace nodal_genus2()
{
    TropicalSpace x;
    for (int i = 0; i < 5; ++i) x.faces.push_back({i, 0, {i}, {}, std::nullopt, true});
    x.faces.push_back({10, 1, {0, 1}, {}, std::nullopt, true});
    x.faces.push_back({11, 1, {1, 2}, {}, std::nullopt, true});
    x.faces.push_back({12, 1, {2, 0}, {}, std::nullopt, true});
    x.faces.push_back({13, 1, {0, 3}, {}, std::nullopt, true});
    x.faces.push_back({14, 1, {3, 4}, {}, std::nullopt, true});
    x.faces.push_back({15, 1, {4, 0}, {}, std::nullopt, true});

    StarChart c0;
    c0.vertex = 0;
    c0.ambient_dim = 2;
    c0.coordinates[0] = pt({0, 0});
    c0.coordinates[1] = pt({1, 0});   // loop A leaves along +e1
    c0.coordinates[2] = pt({0, 1});   // loop A returns along +e2
    c0.coordinates[3] = pt({-1, 0});  // loop B leaves along -e1
    c0.coordinates[4] = pt({0, -1});  // loop B returns along -e2
    x.charts[0] = c0;
    auto line_chart = [&](int base, int prev, int next) {
        StarChart c;
        c.vertex = base;
        c.ambient_dim = 1;
        c.coordinates[base] = pt({0});
        c.coordinates[prev] = pt({-1});
        c.coordinates[next] = pt({1});
        x.charts[base] = c;
    };
    line_chart(1, 0, 2);
    line_chart(2, 1, 0);
    line_chart(3, 0, 4);
    line_chart(4, 3, 0);

    auto row = [&](Int a, Int b) {
        IntMatrix m(1, 2);
        m(0, 0) = a;
        m(0, 1) = b;
        return m;
    };
    auto col = [&](Int a, Int b) {
        IntMatrix m(2, 1);
        m(0, 0) = a;
        m(1, 0) = b;
        return m;
    };
    x.transitions.push_back({0, 1, row(1, 0), {-1}});
    x.transitions.push_back({1, 0, col(1, 0), {1, 0}});
    x.transitions.push_back({1, 2, mat1(1), {-1}});
    x.transitions.push_back({2, 1, mat1(1), {1}});
    x.transitions.push_back({2, 0, col(0, -1), {0, 1}});
    x.transitions.push_back({0, 2, row(0, -1), {1}});
    x.transitions.push_back({0, 3, row(-1, 0), {-1}});
    x.transitions.push_back({3, 0, col(-1, 0), {-1, 0}});
    x.transitions.push_back({3, 4, mat1(1), {-1}});
    x.transitions.push_back({4, 3, mat1(1), {1}});
    x.transitions.push_back({4, 0, col(0, 1), {0, -1}});
    x.transitions.push_back({0, 4, row(0, 1), {1}});
    derive_structure(x);
    x.build();
    return x;
}

/// The projective line: a segment with two sedentarity-1 endpoints.
inline TropicalSpace tp1()
{
    TropicalSpace x;
    x.faces.push_back({0, 0, {0}, {}, std::nullopt, true});
    x.faces.push_back({1, 0, {1}, {}, std::nullopt, true});
    x.faces.push_back({2, 0, {2}, {}, std::nullopt, true});
    x.faces.push_back({3, 1, {0, 1}, {}, std::nullopt, false});
    x.faces.push_back({4, 1, {0, 2}, {}, std::nullopt, false});
    StarChart c0;
    c0.vertex = 0;
    c0.ambient_dim = 1;
    c0.coordinates[0] = pt({0});
    x.charts[0] = c0;
    StarChart c1;
    c1.vertex = 1;
    c1.ambient_dim = 1;
    c1.coordinates[1] = pt_inf({0}, {0});
    c1.coordinates[0] = pt({0});
    x.charts[1] = c1;
    StarChart c2;
    c2.vertex = 2;
    c2.ambient_dim = 1;
    c2.coordinates[2] = pt_inf({0}, {0});
    c2.coordinates[0] = pt({0});
    x.charts[2] = c2;
    x.transitions.push_back({0, 1, mat1(-1), {0}});
    x.transitions.push_back({1, 0, mat1(-1), {0}});
    x.transitions.push_back({0, 2, mat1(1), {0}});
    x.transitions.push_back({2, 0, mat1(1), {0}});
    derive_structure(x);
    x.build();
    return x;
}

/**
 * Product of two built spaces. Vertex pairs get fresh ids 0..k-1 in
 * lexicographic order; higher faces get ids from 1000 upward. Charts are
 * products of charts at the paired vertices; transitions are block products.
 */
inline TropicalSpace product_space(const TropicalSpace& a, const TropicalSpace& b)
{
    TropicalSpace x;
    std::vector<int> va, vb;
    for (const auto& f : a.faces)
        if (f.dim == 0) va.push_back(f.id);
    for (const auto& f : b.faces)
        if (f.dim == 0) vb.push_back(f.id);
    std::sort(va.begin(), va.end());
    std::sort(vb.begin(), vb.end());
    std::map<std::pair<int, int>, int> vid;
    int next = 0;
    for (int u : va)
        for (int v : vb) vid[{u, v}] = next++;
    std::map<std::pair<int, int>, int> fid;
    int nextf = 1000;
    for (const auto& fa : a.faces)
        for (const auto& fb : b.faces) {
            int id;
            if (fa.dim == 0 && fb.dim == 0) id = vid[{fa.id, fb.id}];
            else id = nextf++;
            fid[{fa.id, fb.id}] = id;
            Face f;
            f.id = id;
            f.dim = fa.dim + fb.dim;
            for (int u : fa.vertices)
                for (int v : fb.vertices) f.vertices.push_back(vid[{u, v}]);
            x.faces.push_back(f);
        }
    // charts at vertex pairs
    for (int u : va)
        for (int v : vb) {
            if (!a.charts.count(u) || !b.charts.count(v)) continue;
            const StarChart& ca = a.charts.at(u);
            const StarChart& cb = b.charts.at(v);
            StarChart c;
            c.vertex = vid[{u, v}];
            c.ambient_dim = ca.ambient_dim + cb.ambient_dim;
            for (const auto& [w1, p1] : ca.coordinates)
                for (const auto& [w2, p2] : cb.coordinates) {
                    TPoint p = p1;
                    p.insert(p.end(), p2.begin(), p2.end());
                    c.coordinates[vid[{w1, w2}]] = p;
                }
            x.charts[c.vertex] = c;
        }
    // transitions: block products over pairs of factor transitions/identity
    auto block = [&](const IntMatrix* l1, int n1t, int n1f, const IntMatrix* l2, int n2t,
                     int n2f) {
        IntMatrix m(n1t + n2t, n1f + n2f);
        for (int i = 0; i < n1t; ++i)
            for (int j = 0; j < n1f; ++j) m(i, j) = l1 ? (*l1)(i, j) : (i == j ? 1 : 0);
        for (int i = 0; i < n2t; ++i)
            for (int j = 0; j < n2f; ++j)
                m(n1t + i, n1f + j) = l2 ? (*l2)(i, j) : (i == j ? 1 : 0);
        return m;
    };
    for (int u1 : va)
        for (int u2 : va)
            for (int w1 : vb)
                for (int w2 : vb) {
                    if (u1 == u2 && w1 == w2) continue;
                    const Transition* t1 = u1 == u2 ? nullptr : a.find_transition(u1, u2);
                    const Transition* t2 = w1 == w2 ? nullptr : b.find_transition(w1, w2);
                    if ((u1 != u2 && !t1) || (w1 != w2 && !t2)) continue;
                    int n1f = a.charts.at(u1).ambient_dim, n1t = a.charts.at(u2).ambient_dim;
                    int n2f = b.charts.at(w1).ambient_dim, n2t = b.charts.at(w2).ambient_dim;
                    Transition t;
                    t.from_chart = vid[{u1, w1}];
                    t.to_chart = vid[{u2, w2}];
                    t.linear = block(t1 ? &t1->linear : nullptr, n1t, n1f,
                                     t2 ? &t2->linear : nullptr, n2t, n2f);
                    RatVec tr(n1t + n2t, Rat(0));
                    if (t1)
                        for (int i = 0; i < n1t; ++i) tr[i] = t1->translation[i];
                    if (t2)
                        for (int i = 0; i < n2t; ++i) tr[n1t + i] = t2->translation[i];
                    t.translation = tr;
                    x.transitions.push_back(t);
                }
    derive_structure(x);
    x.build();
    return x;
}

/// Flat torus R^2 / (aZ + bZ), realized as a product of two circles.
inline TropicalSpace torus(const Rat& a, const Rat& b)
{
    return product_space(elliptic(a), elliptic(b));
}

/// Product of two projective lines.
inline TropicalSpace tp1xtp1() { return product_space(tp1(), tp1()); }

}  // namespace examples
}  // namespace tropicore
