#include "clusterscat/fan.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace cs {

namespace {

using Key = std::vector<IntVec>;

Key cone_key(const IntMatrix& G) {
    Key k;
    for (std::size_t j = 0; j < G.cols(); ++j) k.push_back(G.column(j));
    std::sort(k.begin(), k.end());
    return k;
}

IntVec primitive_of(const RatVec& v) {
    Int l = 1;
    for (const auto& x : v) l = lcm(l, x.get_den());
    IntVec r;
    for (const auto& x : v) r.push_back(Int(x * l));
    return primitive(r);
}

RatVec to_rat(const IntVec& v) { return RatVec(v.begin(), v.end()); }

Rat dot(const RatVec& a, const RatVec& b) {
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

std::vector<IntVec> GFan::rays() const {
    std::set<IntVec> s;
    for (const auto& G : cones)
        for (std::size_t j = 0; j < G.cols(); ++j) s.insert(G.column(j));
    return {s.begin(), s.end()};
}

GFan build_g_fan(const ExchangeMatrix& B0, std::size_t depth) {
    GFan f;
    f.B0 = B0;
    f.depth = depth;
    std::set<Key> seen;
    std::vector<PatternPoint> layer{initial_point(B0, false)};
    seen.insert(cone_key(layer[0].G));
    f.cones.push_back(layer[0].G);
    f.walks.push_back(layer[0].walk);
    for (std::size_t d = 0; d <= depth; ++d) {
        std::vector<PatternPoint> next;
        for (const auto& p : layer)
            for (std::size_t k = 0; k < B0.n(); ++k) {
                if (!p.walk.empty() && p.walk.dirs().back() == k) continue;
                PatternPoint q = mutate_point(p, k);
                if (!seen.insert(cone_key(q.G)).second) continue;
                if (d == depth) return f;  // a new cone one step past depth: not closed
                f.cones.push_back(q.G);
                f.walks.push_back(q.walk);
                next.push_back(std::move(q));
            }
        layer = std::move(next);
        if (layer.empty()) break;
    }
    f.closed = true;
    f.complete = facets_paired(f.cones);
    return f;
}

bool facets_paired(const std::vector<IntMatrix>& cones) {
    std::map<Key, int> count;
    for (const auto& G : cones) {
        Key k = cone_key(G);
        for (std::size_t drop = 0; drop < k.size(); ++drop) {
            Key facet;
            for (std::size_t j = 0; j < k.size(); ++j)
                if (j != drop) facet.push_back(k[j]);
            ++count[facet];
        }
    }
    return std::all_of(count.begin(), count.end(), [](const auto& e) { return e.second == 2; });
}

std::vector<IntVec> intersect_simplicial(const IntMatrix& G1, const IntMatrix& G2) {
    std::size_t n = G1.rows();
    std::vector<RatVec> H = inverse(G1), H2 = inverse(G2);
    H.insert(H.end(), H2.begin(), H2.end());

    struct Ray {
        RatVec v;
        std::vector<bool> tight;
    };
    std::vector<Ray> rays;
    for (std::size_t j = 0; j < n; ++j) {
        Ray r{to_rat(G1.column(j)), std::vector<bool>(2 * n, false)};
        for (std::size_t i = 0; i < n; ++i) r.tight[i] = i != j;
        rays.push_back(std::move(r));
    }
    for (std::size_t h = n; h < 2 * n; ++h) {
        std::vector<int> sg(rays.size());
        for (std::size_t r = 0; r < rays.size(); ++r) sg[r] = sign(dot(H[h], rays[r].v));
        std::vector<Ray> next;
        for (std::size_t r = 0; r < rays.size(); ++r) {
            if (sg[r] < 0) continue;
            next.push_back(rays[r]);
            if (sg[r] == 0) next.back().tight[h] = true;
        }
        for (std::size_t p = 0; p < rays.size(); ++p) {
            if (sg[p] <= 0) continue;
            for (std::size_t q = 0; q < rays.size(); ++q) {
                if (sg[q] >= 0) continue;
                // combinatorial adjacency: no third ray is tight on all their common constraints
                std::vector<bool> common(2 * n, false);
                std::size_t nc = 0;
                for (std::size_t i = 0; i < h; ++i) nc += (common[i] = rays[p].tight[i] && rays[q].tight[i]);
                if (nc + 2 < n) continue;
                bool adjacent = true;
                for (std::size_t o = 0; o < rays.size() && adjacent; ++o) {
                    if (o == p || o == q) continue;
                    bool covers = true;
                    for (std::size_t i = 0; i < h && covers; ++i)
                        if (common[i] && !rays[o].tight[i]) covers = false;
                    if (covers) adjacent = false;
                }
                if (!adjacent) continue;
                Rat a = dot(H[h], rays[p].v), b = dot(H[h], rays[q].v);
                Ray r{RatVec(n), common};
                for (std::size_t i = 0; i < n; ++i) r.v[i] = a * rays[q].v[i] - b * rays[p].v[i];
                r.tight[h] = true;
                next.push_back(std::move(r));
            }
        }
        rays = std::move(next);
    }
    std::set<IntVec> out;
    for (const auto& r : rays) out.insert(primitive_of(r.v));
    return {out.begin(), out.end()};
}

bool rows_sign_coherent(const IntMatrix& G) {
    for (std::size_t i = 0; i < G.rows(); ++i) {
        bool p = false, m = false;
        for (std::size_t j = 0; j < G.cols(); ++j) {
            p |= sign(G(i, j)) > 0;
            m |= sign(G(i, j)) < 0;
        }
        if (p && m) return false;
    }
    return true;
}

Report verify_fan(const GFan& f) {
    std::size_t n = f.B0.n();
    if (n > 4) throw std::invalid_argument("verify_fan supports rank <= 4");
    Report rep;
    for (const auto& G : f.cones) {
        rep.expect(abs(det(G)) == 1, "cone " + G.str() + " is not unimodular");
        rep.expect(rows_sign_coherent(G), G.str() + " has a row that is not sign-coherent");
    }
    for (std::size_t a = 0; a < f.cones.size(); ++a)
        for (std::size_t b = a + 1; b < f.cones.size(); ++b) {
            Key ka = cone_key(f.cones[a]), kb = cone_key(f.cones[b]);
            std::vector<IntVec> shared;
            std::set_intersection(ka.begin(), ka.end(), kb.begin(), kb.end(), std::back_inserter(shared));
            auto got = intersect_simplicial(f.cones[a], f.cones[b]);
            rep.expect(got == shared, "cones " + f.cones[a].str() + " and " + f.cones[b].str() +
                                          " do not meet in a common face");
        }
    return rep;
}

RatVec pl_map(const ExchangeMatrix& B0, std::size_t k, PLVariant variant, const RatVec& v) {
    std::size_t n = B0.n();
    if (k >= n || v.size() != n) throw std::invalid_argument("pl_map: bad direction or dimension");
    IntMatrix M;
    int s = sign(v[k]);
    switch (variant) {
        case PLVariant::phi:
            M = jk(n, k) + col_mask(positive_part(s >= 0 ? B0.b() : -B0.b()), k);
            break;
        case PLVariant::T:
            M = s >= 0 ? IntMatrix::identity(n) + col_mask(B0.b(), k) : IntMatrix::identity(n);
            break;
        case PLVariant::S:
            M = IntMatrix::identity(n) + col_mask(B0.b(), k);
            break;
        case PLVariant::eta:
            M = jk(n, k) + col_mask(positive_part(-B0.b()), k);
            break;
    }
    return M * v;
}

IntVec pl_map(const ExchangeMatrix& B0, std::size_t k, PLVariant variant, const IntVec& v) {
    RatVec r = pl_map(B0, k, variant, to_rat(v));
    IntVec out;
    for (const auto& x : r) out.push_back(x.get_num());
    return out;
}

Rat inner_product_D(const ExchangeMatrix& B, const IntVec& u, const IntVec& v) {
    return inner_product_D(B.skew(), u, v);
}

bool in_cone(const IntMatrix& G, const IntVec& v) {
    auto x = solve(G, to_rat(v));
    if (!x) throw std::invalid_argument("in_cone: singular generator matrix");
    return std::all_of(x->begin(), x->end(), [](const Rat& r) { return sign(r) >= 0; });
}

bool in_face(const IntMatrix& G, std::size_t i, const IntVec& v) {
    auto x = solve(G, to_rat(v));
    if (!x) throw std::invalid_argument("in_face: singular generator matrix");
    if (sign((*x)[i]) != 0) return false;
    return std::all_of(x->begin(), x->end(), [](const Rat& r) { return sign(r) >= 0; });
}

bool outgoing_test(const PatternPoint& p, std::size_t i) {
    int e = tropical_sign(p, i);
    IntVec hat = scale(e, (p.B0.b() * p.C).column(i));
    if (!in_face(p.G, i, hat)) return false;
    IntVec cp = scale(e, p.c(i));
    std::size_t ones = 0, zeros = 0;
    for (const auto& x : cp) {
        if (x == 1) ++ones;
        if (x == 0) ++zeros;
    }
    if (ones != 1 || ones + zeros != cp.size())
        throw InvariantError("incoming cluster wall with c+ = " + vec_str(cp) + " not a unit vector");
    return true;
}

int surd_sign(const Rat& a, const Rat& b, const Int& D) {
    if (sign(D) < 0) throw std::invalid_argument("surd_sign: negative radicand");
    int sa = sign(a), sb = sign(b) * (sign(D) > 0 ? 1 : 0);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // opposite signs: compare a^2 with b^2 D
    int c = sign(Rat(a * a - b * b * D));
    return c > 0 ? sa : c < 0 ? sb : 0;
}

std::vector<IntVec> rank2_g_sequence(const Int& b, const Int& c, std::size_t count, bool first) {
    ExchangeMatrix B0(IntMatrix{{0, 0}, {0, 0}});
    IntMatrix m(2, 2);
    m(0, 1) = -c;
    m(1, 0) = b;
    B0 = ExchangeMatrix(m);
    PatternPoint p = initial_point(B0, false);
    std::vector<IntVec> out;
    std::size_t k = first ? 0 : 1;
    for (std::size_t s = 0; s < count; ++s, k = 1 - k) {
        p = mutate_point(p, k);
        out.push_back(p.g(k));
    }
    return out;
}

int cross_sign_with_limit(const IntVec& g, const Int& b, const Int& c, bool primed) {
    // cross(g, v) = g1 v2 - g2 v1 with v = (bc -+ sqrt(D), -2b)
    Int D = b * c * (b * c - 4);
    Rat a = Rat(-2 * b * g[0] - b * c * g[1]);
    Rat s = primed ? Rat(-g[1]) : Rat(g[1]);
    return surd_sign(a, s, D);
}

}  // namespace cs
