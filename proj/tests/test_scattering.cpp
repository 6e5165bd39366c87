#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "clusterscat/fan.hpp"
#include "clusterscat/scattering.hpp"
#include "clusterscat/separation.hpp"
#include "support.hpp"

#include <set>

using namespace cs;

namespace {

ExchangeMatrix rank2(long b, long c) {
    IntMatrix m(2, 2);
    m(0, 1) = -c;
    m(1, 0) = b;
    return ExchangeMatrix(m);
}

ExchangeMatrix A2() { return rank2(1, 1); }

const Wall* find_ray(const ScatteringDiagram& D, const IntVec& v) {
    for (const auto& w : D.walls)
        for (const auto& g : w.support)
            if (g == v) return &w;
    return nullptr;
}

TruncatedSeries xmono(std::size_t n, std::size_t i, long ell) { return TruncatedSeries::monomial(unit(n, i), ell); }

Laurent yhat_poly(std::initializer_list<std::pair<IntVec, long>> terms) {
    Laurent p(2);
    for (const auto& [e, c] : terms) p += mono(e, c);
    return p;
}

std::set<IntVec> support_set(const Wall& w) {
    std::set<IntVec> s;
    for (const auto& g : w.support) s.insert(primitive(g));
    return s;
}

}  // namespace

TEST_CASE("p* is multiplication by B0; singular matrices are refused") {
    ExchangeMatrix B = A2();
    CHECK(p_star(B, IntVec{1, 1}) == IntVec{-1, 1});
    for (std::size_t i = 0; i < 2; ++i) CHECK(p_star(B, unit(2, i)) == B.b().column(i));
    ExchangeMatrix Z(IntMatrix{{0, 0}, {0, 0}});
    CHECK_THROWS_AS(initial_diagram(Z, 4), std::invalid_argument);
    CHECK_THROWS_AS(complete_rank2(Z, 4), std::invalid_argument);
    CHECK_THROWS_AS(cluster_walls(Z, 2, 4), std::invalid_argument);
}

TEST_CASE("minimal multiple") {
    ExchangeMatrix B2 = rank2(2, 1);  // d = (1,2)
    CHECK(minimal_multiple(B2, IntVec{1, 0}) == IntVec{1, 0});
    CHECK(minimal_multiple(B2, IntVec{0, 1}) == IntVec{0, 2});
    CHECK(minimal_multiple(B2, IntVec{1, 2}) == IntVec{1, 2});
    CHECK(minimal_multiple(B2, IntVec{1, 1}) == IntVec{2, 2});
    ExchangeMatrix A22 = rank2(4, 1);  // d = (1,4)
    CHECK(minimal_multiple(A22, IntVec{1, 2}) == IntVec{2, 4});
    // n0' = d_i c+_{i;t} on cluster walls
    for (const auto& c : testing::corpus(200, 4, 10, 2, 97)) {
        PatternPoint p = evaluate_walk(c.B0, c.walk, {false});
        for (std::size_t i = 0; i < p.n(); ++i) {
            IntVec cp = scale(tropical_sign(p, i), p.c(i));
            CHECK(minimal_multiple(c.B0, cp) == scale(c.B0.d(i), cp));
        }
    }
}

TEST_CASE("A2 wall crossings along both curves") {
    ExchangeMatrix B = A2();
    const long ell = 6;
    WallFunction f1 = WallFunction::binomial({1, 0}), f2 = WallFunction::binomial({0, 1}),
                 f12 = WallFunction::binomial({1, 1});
    TruncatedSeries x1 = xmono(2, 0, ell), x2 = xmono(2, 1, ell);
    CHECK(wall_cross(B, f1, 1, x1).body == yhat_poly({{{0, 0}, 1}, {{1, 0}, 1}}));
    std::vector<Crossing> g1{{f1, 1}, {f2, 1}};
    std::vector<Crossing> g2{{f2, 1}, {f12, 1}, {f1, 1}};
    Laurent expect1 = yhat_poly({{{0, 0}, 1}, {{1, 0}, 1}, {{1, 1}, 1}});
    CHECK(path_ordered_product(B, g1, x1).body == expect1);
    CHECK(path_ordered_product(B, g2, x1).body == expect1);
    Laurent expect2 = yhat_poly({{{0, 0}, 1}, {{0, 1}, 1}});
    CHECK(path_ordered_product(B, g1, x2).body == expect2);
    CHECK(path_ordered_product(B, g2, x2) == TruncatedSeries{unit(2, 1), expect2, ell});
    CHECK(path_ordered_product(B, {}, x1) == x1);
    // x1 (1+yhat1+yhat1 yhat2) in x: yhat1 = x2, yhat2 = x1^{-1}
    CHECK(path_ordered_product(B, g1, x1).to_x(B) == mono({1, 0}) + mono({1, 1}) + mono({0, 1}));
    // same as a diagram-indexed crossing list
    ScatteringDiagram D = complete_rank2(B, ell);
    std::vector<std::pair<std::size_t, int>> idx;
    for (const auto& [v, f] : std::vector<std::pair<IntVec, int>>{{{0, 1}, 1}, {{-1, 0}, 1}}) {
        for (std::size_t w = 0; w < D.walls.size(); ++w)
            if (support_set(D.walls[w]).count(v)) idx.push_back({w, f});
    }
    CHECK(path_ordered_product(D, idx, x1).body == expect1);
}

TEST_CASE("crossing sign and inverse crossings") {
    ExchangeMatrix B = A2();
    CHECK(crossing_sign(B, IntVec{1, 0}, IntVec{-1, 0}) == 1);
    CHECK(crossing_sign(B, IntVec{1, 0}, IntVec{1, 3}) == -1);
    CHECK_THROWS_AS(crossing_sign(B, IntVec{1, 0}, IntVec{0, 1}), std::invalid_argument);
    for (const auto& c : testing::corpus(60, 3, 6, 2, 101)) {
        std::size_t n = c.B0.n();
        PatternPoint p = evaluate_walk(c.B0, c.walk, {false});
        for (std::size_t i = 0; i < n; ++i) {
            IntVec cp = scale(tropical_sign(p, i), p.c(i));
            WallFunction f{cp, {Int(2), Int(-1), Int(3)}};
            TruncatedSeries s = TruncatedSeries::monomial(p.g(i), 7);
            s.body += mono(unit(n, 0), 5);
            TruncatedSeries back = wall_cross(c.B0, f, -1, wall_cross(c.B0, f, 1, s));
            CHECK(back == s.truncated(7));
        }
    }
}

TEST_CASE("p^{-eps} agrees with q on monomials") {
    for (const auto& c : testing::corpus(80, 4, 6, 2, 103, 9)) {
        std::size_t n = c.B0.n();
        PatternPoint p = evaluate_walk(c.B0, c.walk, {false});
        for (std::size_t k = 0; k < n; ++k) {
            int e = tropical_sign(p, k);
            IntVec cp = scale(e, p.c(k));
            for (std::size_t i = 0; i < n; ++i) {
                IntVec m = p.g(i);
                SFRational q = q_automorphism(p, k, mono(m), Alphabet::x);
                // exponent is -delta_ik: x^{g_i} fixed or divided by 1 + yhat^{c+}
                long ell = 3 * degree(cp);
                TruncatedSeries s = wall_cross(c.B0, WallFunction::binomial(cp), -e, TruncatedSeries::monomial(m, ell));
                if (i != k) {
                    CHECK(q.equals(mono(m)));
                    CHECK(s.body.is_constant(1));
                } else {
                    // x^m (1 + X)^{-1}: series 1 - u + u^2 - u^3
                    Laurent expect(n);
                    for (long j = 0; j <= 3; ++j) expect += mono(scale(Int(j), cp), j % 2 ? -1 : 1);
                    CHECK(s.body == expect);
                    CHECK(q.equals(SFRational{mono(m), Laurent::constant(n, 1) + mono(p.B0.b() * cp)}));
                }
            }
            // random monomials: compare wherever the exponent is nonnegative, so both sides are polynomial
            auto& g = testing::rng();
            for (int r = 0; r < 3; ++r) {
                IntVec m(n);
                for (auto& x : m) x = testing::uniform(-3, 3, g);
                Rat pr = inner_product_D(c.B0.skew(), m, scale(c.B0.d(k), p.c(k)));
                long ex = -pr.get_num().get_si();
                if (ex < 0) continue;
                long ell = ex * degree(cp);
                TruncatedSeries s = wall_cross(c.B0, WallFunction::binomial(cp), -e, TruncatedSeries::monomial(m, ell));
                CHECK(q_automorphism(p, k, mono(m), Alphabet::x).equals(s.to_x(c.B0)));
            }
        }
    }
}

TEST_CASE("path-ordered product along the cluster path gives x^g F(yhat)") {
    for (const auto& c : testing::corpus(150, 4, 7, 1, 107, 9)) {
        PatternPoint p = evaluate_walk(c.B0, c.walk);
        if (sgn(det(c.B0.b())) == 0) continue;
        auto path = cluster_path(c.B0, c.walk);
        for (std::size_t i = 0; i < p.n(); ++i) {
            long ell = std::max(1L, p.F[i].max_total_degree());
            TruncatedSeries s = path_ordered_product(c.B0, path, TruncatedSeries::monomial(p.g(i), ell));
            CHECK(s.body == p.F[i]);
            CHECK(s.to_x(c.B0) == x_variable(p, i));
        }
    }
    // truncation below the F-degree keeps the low-degree part
    PatternPoint p = evaluate_walk(rank2(3, 1), Walk({0, 1, 0, 1}));
    auto path = cluster_path(rank2(3, 1), Walk({0, 1, 0, 1}));
    for (std::size_t i = 0; i < 2; ++i)
        CHECK(path_ordered_product(rank2(3, 1), path, TruncatedSeries::monomial(p.g(i), 3)).body == p.F[i].truncated(3));
}

TEST_CASE("cluster walls of finite types") {
    ScatteringDiagram a2 = cluster_walls(A2(), 8, 6);
    CHECK(a2.walls.size() == 5);
    ScatteringDiagram n = normalize(a2);
    REQUIRE(n.walls.size() == 3);
    CHECK(equivalent(a2, complete_rank2(A2(), 6), 6));
    CHECK(find_ray(n, {1, -1})->f == WallFunction::binomial({1, 1}));
    CHECK(!find_ray(n, {1, -1})->incoming);
    CHECK(find_ray(n, {0, 1})->incoming);
    CHECK(support_set(*find_ray(n, {0, 1})) == std::set<IntVec>{{0, 1}, {0, -1}});

    ScatteringDiagram b2 = normalize(cluster_walls(rank2(2, 1), 8, 8));
    CHECK(b2.walls.size() == 4);
    CHECK(find_ray(b2, {1, -2})->f == WallFunction::binomial({1, 1}));
    CHECK(find_ray(b2, {1, -1})->f == WallFunction::binomial({1, 2}));

    ScatteringDiagram g2 = normalize(cluster_walls(rank2(3, 1), 10, 8));
    CHECK(g2.walls.size() == 6);
    CHECK(find_ray(g2, {1, -3})->f == WallFunction::binomial({1, 1}));
    CHECK(find_ray(g2, {1, -2})->f == WallFunction::binomial({2, 3}));
    CHECK(find_ray(g2, {2, -3})->f == WallFunction::binomial({1, 2}));
    CHECK(find_ray(g2, {1, -1})->f == WallFunction::binomial({1, 3}));
    for (const auto* D : {&n, &b2, &g2}) {
        CHECK(check_consistency_rank2(*D, 8));
        for (const auto& w : D->walls) CHECK(w.incoming == (degree(w.f.n0) == 1));
    }
}

TEST_CASE("cluster walls: positive normals, D-orthogonal supports, positive orthant is a chamber") {
    for (const auto& c : testing::corpus(40, 4, 0, 2, 109)) {
        if (sgn(det(c.B0.b())) == 0) continue;
        ScatteringDiagram D = cluster_walls(c.B0, 4, 8);
        for (const auto& w : D.walls) {
            for (const auto& x : w.f.n0) CHECK(sgn(x) >= 0);
            CHECK(!is_zero(w.f.n0));
            for (const auto& g : w.support) CHECK(pairing(c.B0, w.f.n0, g) == 0);
            // no support point lies in the open positive orthant
            IntVec sum(c.B0.n());
            for (const auto& g : w.support) sum = add(sum, g);
            bool inside = std::all_of(sum.begin(), sum.end(), [](const Int& x) { return sgn(x) > 0; });
            CHECK(!inside);
            CHECK(w.incoming == is_incoming(c.B0, w));
        }
    }
}

TEST_CASE("consistency of cluster walls: finite yes, affine no") {
    CHECK(check_consistency_rank2(normalize(cluster_walls(A2(), 8, 6)), 6));
    ScatteringDiagram a11 = normalize(cluster_walls(rank2(2, 2), 12, 6));
    CHECK(!check_consistency_rank2(a11, 6));
    CHECK(!check_consistency_rank2(normalize(cluster_walls(rank2(4, 1), 12, 6)), 6));
}

TEST_CASE("rank-2 completion: finite types add nothing") {
    ScatteringDiagram D = complete_rank2(A2(), 6);
    CHECK(D.walls.size() == 3);
    CHECK(check_consistency_rank2(D, 6));
    CHECK(equivalent(complete_rank2(rank2(2, 1), 8), cluster_walls(rank2(2, 1), 10, 8), 8));
    CHECK(equivalent(complete_rank2(rank2(1, 2), 8), cluster_walls(rank2(1, 2), 10, 8), 8));
    CHECK(equivalent(complete_rank2(rank2(3, 1), 9), cluster_walls(rank2(3, 1), 12, 9), 9));
    CHECK(equivalent(complete_rank2(rank2(1, 3), 9), cluster_walls(rank2(1, 3), 12, 9), 9));
}

TEST_CASE("rank-2 completion: affine limiting walls") {
    ScatteringDiagram a11 = complete_rank2(rank2(2, 2), 8);
    CHECK(check_consistency_rank2(a11, 8));
    // (sum u^k)^2 = sum (k+1) u^k, u = yhat1 yhat2
    const Wall* w = find_ray(a11, {1, -1});
    REQUIRE(w != nullptr);
    CHECK(w->f == WallFunction{{1, 1}, {2, 3, 4, 5}});
    // every other wall is a cluster wall
    ScatteringDiagram cl = normalize(cluster_walls(rank2(2, 2), 16, 8), 8);
    CHECK(a11.walls.size() == cl.walls.size() + 1);
    for (const auto& x : cl.walls) {
        const Wall* y = find_ray(a11, x.support[0]);
        REQUIRE(y != nullptr);
        CHECK(y->f == x.f);
    }

    ScatteringDiagram a22 = complete_rank2(rank2(4, 1), 15);
    CHECK(check_consistency_rank2(a22, 15));
    // (1+u)(sum u^k)^2 = sum (2k+1) u^k, u = yhat1 yhat2^2
    const Wall* v = find_ray(a22, {1, -2});
    REQUIRE(v != nullptr);
    CHECK(v->f == WallFunction{{1, 2}, {3, 5, 7, 9, 11}});
    ScatteringDiagram dual = complete_rank2(rank2(1, 4), 15);
    CHECK(find_ray(dual, {2, -1})->f == WallFunction{{2, 1}, {3, 5, 7, 9, 11}});
}

TEST_CASE("rank-2 completion: structure on many matrices") {
    for (auto [b, c] : std::vector<std::pair<long, long>>{{1, 1}, {2, 1}, {3, 1}, {2, 2}, {4, 1}, {1, 5}, {2, 3}, {3, 3}, {-1, -1}, {-2, -2}}) {
        ExchangeMatrix B = rank2(b, c);
        long ell = (b * c >= 5) ? 6 : 9;
        ScatteringDiagram D = complete_rank2(B, ell);
        INFO("b=" << b << " c=" << c);
        CHECK(check_consistency_rank2(D, ell));
        std::size_t incoming = 0;
        for (const auto& w : D.walls) {
            for (const auto& g : w.support) CHECK(pairing(B, w.f.n0, g) == 0);
            if (w.incoming) {
                ++incoming;
                CHECK(degree(w.f.n0) == 1);
            } else {
                CHECK(degree(w.f.n0) > 1);
            }
            for (const auto& e : factorize(w.f, max_power(w.f, ell))) CHECK(sgn(e) >= 0);
        }
        CHECK(incoming == 2);
        // each cluster wall of degree <= ell appears unchanged
        ScatteringDiagram cl = normalize(cluster_walls(B, 2 * ell + 4, ell), ell);
        for (const auto& x : cl.walls)
            for (const auto& g : x.support) {
                const Wall* y = find_ray(D, g);
                REQUIRE(y != nullptr);
                CHECK(y->f == x.f);
            }
        // chambers: no ray enters the interior of a G-cone
        GFan fan = build_g_fan(B, 2 * static_cast<std::size_t>(ell));
        for (const auto& G : fan.cones)
            for (const auto& w : D.walls)
                for (const auto& g : w.support) {
                    auto x = solve(G, RatVec(g.begin(), g.end()));
                    bool interior = sign((*x)[0]) > 0 && sign((*x)[1]) > 0;
                    CHECK(!interior);
                }
    }
}

TEST_CASE("factorization of wall functions") {
    CHECK(factorize(WallFunction{{1, 1}, {2, 3, 4, 5, 6, 7, 8}}, 7) ==
          std::vector<Int>{2, 2, 0, 2, 0, 0, 0});  // (1-u)^{-2} = prod (1+u^{2^j})^2
    CHECK(factorize(WallFunction::binomial({1, 1}), 3) == std::vector<Int>{1, 0, 0});
    CHECK(factorize(WallFunction{{1, 1}, {-1}}, 3)[0] == -1);
}

TEST_CASE("normalize merges, drops trivial walls and joins lines") {
    ExchangeMatrix B = A2();
    ScatteringDiagram D{B, 6, {}};
    D.walls.push_back({{{1, -1}}, WallFunction::binomial({1, 1}), false});
    D.walls.push_back({{{2, -2}}, WallFunction{{1, 1}, {Int(1)}}, false});
    D.walls.push_back({{{0, 1}}, WallFunction{{1, 0}, {}}, false});
    D.walls.push_back({{{1, 0}}, WallFunction::binomial({0, 1}), false});
    D.walls.push_back({{{-1, 0}}, WallFunction::binomial({0, 1}), false});
    ScatteringDiagram n = normalize(D);
    REQUIRE(n.walls.size() == 2);
    CHECK(n.walls[0].support.size() == 2);  // the line e2-perp, first in angular order
    CHECK(n.walls[1].f == WallFunction{{1, 1}, {2, 1}});
    CHECK(n.walls[0].incoming);
}

TEST_CASE("diagram mutation: intermediate T_k of A2") {
    ScatteringDiagram D = complete_rank2(A2(), 6);
    ScatteringDiagram t1 = apply_T(D, 0);
    auto has = [](const ScatteringDiagram& T, const IntVec& ray, const IntVec& n0) {
        for (const auto& w : T.walls)
            if (support_set(w).count(ray) && w.f.n0 == n0 && w.f.coeffs == std::vector<Int>{1}) return true;
        return false;
    };
    CHECK(has(t1, {0, 1}, {-1, 0}));
    CHECK(has(t1, {0, -1}, {-1, 0}));
    CHECK(has(t1, {1, 1}, {-1, 1}));
    CHECK(has(t1, {1, 0}, {0, 1}));
    CHECK(has(t1, {-1, 0}, {0, 1}));
    CHECK(t1.walls.size() == 4);
    ScatteringDiagram t2 = apply_T(D, 1);
    CHECK(has(t2, {1, 0}, {0, -1}));
    CHECK(has(t2, {-1, 0}, {0, -1}));
    CHECK(has(t2, {0, -1}, {1, 0}));
    CHECK(has(t2, {-1, 1}, {1, 1}));
    CHECK(has(t2, {1, -1}, {1, 1}));
    CHECK(t2.walls.size() == 4);
}

TEST_CASE("diagram mutation matches completion of the mutated matrix") {
    CHECK(mutation_degree_factor(A2(), 0) >= 1);
    for (auto [b, c] : std::vector<std::pair<long, long>>{{1, 1}, {2, 1}, {1, 2}, {3, 1}, {2, 2}, {4, 1}, {1, 4}, {-1, -1}, {1, 5}}) {
        ExchangeMatrix B = rank2(b, c);
        for (std::size_t k = 0; k < 2; ++k) {
            INFO("b=" << b << " c=" << c << " k=" << k);
            long ell = b * c >= 5 ? 4 : 6;
            long L = mutation_degree_factor(B, k);
            ScatteringDiagram old = complete_rank2(B, ell * L);
            ScatteringDiagram mut = mutate_diagram(old, k);
            CHECK(mut.B0 == B.mutate(k));
            for (const auto& w : mut.walls)
                for (const auto& x : w.f.n0) CHECK(sgn(x) >= 0);
            CHECK(equivalent(mut, complete_rank2(B.mutate(k), ell), ell));
        }
    }
}

TEST_CASE("basis change identity eta B0 = mu_k(B0) E") {
    for (const auto& c : testing::corpus(200, 5, 0, 3, 113)) {
        std::size_t n = c.B0.n();
        for (std::size_t k = 0; k < n; ++k) {
            IntMatrix eta = jk(n, k) + col_mask(positive_part(-c.B0.b()), k);
            IntMatrix E = jk(n, k) + row_mask(positive_part(c.B0.b()), k);
            CHECK(eta * c.B0.b() == c.B0.mutate(k).b() * E);
            CHECK(E * E == IntMatrix::identity(n));
        }
    }
}

TEST_CASE("cluster walls correspond under mutation in any rank") {
    std::size_t checked = 0;
    for (const auto& c : testing::corpus(120, 4, 7, 2, 127, 9)) {
        std::size_t n = c.B0.n();
        if (sgn(det(c.B0.b())) == 0) continue;
        PatternPoint p = evaluate_walk(c.B0, c.walk, {false});
        for (std::size_t k = 0; k < n; ++k) {
            std::vector<std::size_t> w1{k};
            for (auto d : c.walk.dirs()) w1.push_back(d);
            PatternPoint q = evaluate_walk(c.B0.mutate(k), Walk(w1), {false});
            for (std::size_t i = 0; i < n; ++i) {
                std::vector<IntVec> face;
                for (std::size_t j = 0; j < n; ++j)
                    if (j != i) face.push_back(p.g(j));
                ScatteringDiagram D{c.B0, 1L << 40, {{face, WallFunction::binomial(scale(tropical_sign(p, i), p.c(i))), false}}};
                ScatteringDiagram M = mutate_diagram(D, k);
                REQUIRE(M.walls.size() == 1);
                std::set<IntVec> expect;
                for (std::size_t j = 0; j < n; ++j)
                    if (j != i) expect.insert(q.g(j));
                CHECK(support_set(M.walls[0]) == expect);
                CHECK(M.walls[0].f == WallFunction::binomial(scale(tropical_sign(q, i), q.c(i))));
                ++checked;
            }
        }
    }
    CHECK(checked > 500);
}

TEST_CASE("support correspondence under phi in rank 2") {
    for (auto [b, c] : std::vector<std::pair<long, long>>{{2, 2}, {4, 1}, {2, 1}}) {
        ExchangeMatrix B = rank2(b, c);
        for (std::size_t k = 0; k < 2; ++k) {
            const long ell = 5;
            ScatteringDiagram old = complete_rank2(B, ell * mutation_degree_factor(B, k));
            ScatteringDiagram fresh = complete_rank2(B.mutate(k), ell);
            std::set<IntVec> mapped;
            for (const auto& w : old.walls)
                for (const auto& g : w.support) mapped.insert(primitive(pl_map(B, k, PLVariant::phi, g)));
            for (const auto& w : fresh.walls)
                for (const auto& g : w.support) CHECK(mapped.count(g) == 1);
        }
    }
}

TEST_CASE("rank 3 and higher: completion and consistency are refused") {
    ExchangeMatrix A3(IntMatrix{{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}});
    ExchangeMatrix A3n(IntMatrix{{0, 1, 0, 0}, {-1, 0, 1, 0}, {0, -1, 0, 1}, {0, 0, -1, 0}});
    CHECK_THROWS_AS(complete_rank2(A3n, 4), std::invalid_argument);
    ScatteringDiagram D = cluster_walls(A3n, 3, 4);
    CHECK_THROWS_AS(check_consistency_rank2(D, 4), std::invalid_argument);
    CHECK(!D.walls.empty());
    CHECK_THROWS_AS(cluster_walls(A3, 2, 4), std::invalid_argument);  // odd rank skew: singular
}
