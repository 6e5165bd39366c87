#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "clusterscat/fan.hpp"
#include "support.hpp"

#include <algorithm>
#include <map>
#include <set>

using namespace cs;

namespace {

ExchangeMatrix A2() { return ExchangeMatrix(IntMatrix{{0, -1}, {1, 0}}); }
ExchangeMatrix B2() { return ExchangeMatrix(IntMatrix{{0, -1}, {2, 0}}); }
ExchangeMatrix G2() { return ExchangeMatrix(IntMatrix{{0, -1}, {3, 0}}); }
ExchangeMatrix A3() { return ExchangeMatrix(IntMatrix{{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}}); }

std::vector<IntVec> scaled_rows(const IntMatrix& G) {
    std::vector<IntVec> out;
    for (const auto& r : inverse(G)) {
        Int l = 1;
        for (const auto& x : r) l = lcm(l, x.get_den());
        IntVec v;
        for (const auto& x : r) v.push_back(Int(x * l));
        out.push_back(v);
    }
    return out;
}

// Brute force: every extreme ray of {H v >= 0} is the kernel of n-1 independent tight rows.
std::vector<IntVec> intersect_oracle(const IntMatrix& G1, const IntMatrix& G2) {
    std::size_t n = G1.rows();
    auto H = scaled_rows(G1), H2 = scaled_rows(G2);
    H.insert(H.end(), H2.begin(), H2.end());
    std::set<IntVec> out;
    std::size_t m = H.size();
    std::vector<bool> pick(m, false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(n - 1), true);
    std::sort(pick.begin(), pick.end());
    do {
        std::vector<IntVec> rows;
        for (std::size_t i = 0; i < m; ++i)
            if (pick[i]) rows.push_back(H[i]);
        // kernel by signed maximal minors
        IntVec v(n);
        for (std::size_t c = 0; c < n; ++c) {
            IntMatrix M(n - 1, n - 1);
            for (std::size_t r = 0; r + 1 < n; ++r)
                for (std::size_t j = 0, jj = 0; j < n; ++j)
                    if (j != c) M(r, jj++) = rows[r][j];
            v[c] = (c % 2 ? -1 : 1) * (n == 1 ? Int(1) : det(M));
        }
        if (is_zero(v)) continue;
        for (int s : {1, -1}) {
            IntVec w = scale(s, v);
            bool ok = true;
            for (const auto& h : H) {
                Int d = 0;
                for (std::size_t j = 0; j < n; ++j) d += h[j] * w[j];
                if (d < 0) ok = false;
            }
            if (ok) out.insert(primitive(w));
        }
    } while (std::next_permutation(pick.begin(), pick.end()));
    return {out.begin(), out.end()};
}

std::set<IntVec> ray_set(const GFan& f) {
    auto r = f.rays();
    return {r.begin(), r.end()};
}

}  // namespace

TEST_CASE("A2 fan has five cones and is complete") {
    GFan f = build_g_fan(A2(), 6);
    CHECK(f.cones.size() == 5);
    CHECK(f.closed);
    CHECK(f.complete);
    CHECK(ray_set(f) == std::set<IntVec>{{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {1, -1}});
    CHECK(verify_fan(f).ok());
}

TEST_CASE("B2 and G2 fans") {
    GFan b = build_g_fan(B2(), 8);
    CHECK(b.cones.size() == 6);
    CHECK(b.complete);
    CHECK(ray_set(b) == std::set<IntVec>{{-1, 0}, {0, -1}, {1, -2}, {1, -1}, {1, 0}, {0, 1}});
    GFan g = build_g_fan(G2(), 10);
    CHECK(g.cones.size() == 8);
    CHECK(g.complete);
    CHECK(verify_fan(b).ok());
    CHECK(verify_fan(g).ok());
}

TEST_CASE("A3 fan: 14 cones, complete, verified") {
    GFan f = build_g_fan(A3(), 10);
    CHECK(f.cones.size() == 14);
    CHECK(f.rays().size() == 9);
    CHECK(f.complete);
    Report r = verify_fan(f);
    CHECK(r.ok());
    CHECK(r.checks > 14 * 13 / 2);
}

TEST_CASE("A1^(1) fan is never complete; rays follow the two recursions") {
    ExchangeMatrix B(IntMatrix{{0, -2}, {2, 0}});
    for (std::size_t d : {2, 5, 8}) {
        GFan f = build_g_fan(B, d);
        CHECK(!f.closed);
        CHECK(!f.complete);
        CHECK(verify_fan(f).ok());
        auto rays = ray_set(f);
        for (const auto& r : rays) {
            if (r == IntVec{1, 0} || r == IntVec{0, 1} || r == IntVec{-1, 0} || r == IntVec{0, -1}) continue;
            // (k, -(k+1)) or (k+2, -(k+1))
            bool one = r[0] >= 0 && r[1] == -(r[0] + 1);
            bool two = r[0] >= 2 && r[1] == -(r[0] - 1);
            CHECK((one || two));
        }
    }
    auto rays = ray_set(build_g_fan(B, 6));
    CHECK(rays.count({3, -4}) == 1);
    CHECK(rays.count({5, -4}) == 1);
}

TEST_CASE("cone intersection agrees with the brute-force oracle") {
    auto& g = testing::rng();
    std::size_t nonempty = 0;
    for (const auto& c : testing::corpus(150, 4, 6, 2, 61)) {
        PatternPoint a = evaluate_walk(c.B0, c.walk, {false});
        PatternPoint b = evaluate_walk(c.B0, testing::random_walk(c.B0.n(), 4, g), {false});
        auto got = intersect_simplicial(a.G, b.G);
        CHECK(got == intersect_oracle(a.G, b.G));
        nonempty += !got.empty();
    }
    CHECK(nonempty > 20);
    // overlapping but not face-to-face
    IntMatrix P{{1, 1}, {0, 1}}, Q{{1, 0}, {1, 1}};
    CHECK(intersect_simplicial(P, Q) == std::vector<IntVec>{{1, 1}});
    IntMatrix R{{1, 2}, {0, 1}};
    CHECK(intersect_simplicial(IntMatrix::identity(2), R) == intersect_oracle(IntMatrix::identity(2), R));
    CHECK(intersect_simplicial(IntMatrix::identity(2), R) == std::vector<IntVec>{{1, 0}, {2, 1}});
    CHECK(!rows_sign_coherent(IntMatrix{{1, -1}, {0, 1}}));
}

TEST_CASE("random rank-3 fans at depth 5 pass") {
    for (const auto& c : testing::corpus(25, 3, 0, 2, 67)) {
        if (c.B0.n() != 3) continue;
        GFan f = build_g_fan(c.B0, 5);
        Report r = verify_fan(f);
        for (const auto& e : r.failures) FAIL_CHECK(e);
    }
}

TEST_CASE("negative control: corrupted cone sets fail") {
    GFan f = build_g_fan(A2(), 6);
    GFan bad = f;
    bad.cones.push_back(IntMatrix{{1, 1}, {0, 1}});  // overlaps the positive orthant
    CHECK(!verify_fan(bad).ok());
    CHECK(!facets_paired(bad.cones));
    GFan missing = f;
    missing.cones.pop_back();
    CHECK(!facets_paired(missing.cones));
    GFan ns = f;
    ns.cones.push_back(IntMatrix{{1, -1}, {1, 1}});
    CHECK(!verify_fan(ns).ok());
    GFan big;
    big.B0 = ExchangeMatrix(IntMatrix(5, 5));
    CHECK_THROWS_AS(verify_fan(big), std::invalid_argument);
}

TEST_CASE("pl maps: phi = eta o T, involution, fixed hyperplane") {
    auto& g = testing::rng();
    for (const auto& c : testing::corpus(200, 5, 0, 3, 71)) {
        std::size_t n = c.B0.n();
        for (std::size_t k = 0; k < n; ++k) {
            RatVec v(n);
            for (auto& x : v) x = Rat(testing::uniform(-9, 9, g), testing::uniform(1, 4, g));
            for (auto& x : v) x.canonicalize();
            RatVec phi = pl_map(c.B0, k, PLVariant::phi, v);
            CHECK(phi == pl_map(c.B0, k, PLVariant::eta, pl_map(c.B0, k, PLVariant::T, v)));
            CHECK(pl_map(c.B0.mutate(k), k, PLVariant::phi, phi) == v);
            if (sign(v[k]) >= 0) CHECK(pl_map(c.B0, k, PLVariant::T, v) == pl_map(c.B0, k, PLVariant::S, v));
            RatVec w = v;
            w[k] = 0;
            CHECK(pl_map(c.B0, k, PLVariant::phi, w) == w);
        }
    }
}

TEST_CASE("phi carries g-vectors to g-vectors of the mutated initial seed") {
    for (const auto& c : testing::corpus(200, 4, 8, 2, 73)) {
        std::size_t n = c.B0.n();
        PatternPoint p = evaluate_walk(c.B0, c.walk, {false});
        for (std::size_t k = 0; k < n; ++k) {
            std::vector<std::size_t> w{k};
            for (auto d : c.walk.dirs()) w.push_back(d);
            PatternPoint q = evaluate_walk(c.B0.mutate(k), Walk(w), {false});
            for (std::size_t i = 0; i < n; ++i) CHECK(pl_map(c.B0, k, PLVariant::phi, p.g(i)) == q.g(i));
        }
    }
    // A2, k = 1: the five cones of the initial fan go to the five cones of the mutated fan
    GFan f0 = build_g_fan(A2(), 6), f1 = build_g_fan(A2().mutate(0), 6);
    std::set<std::set<IntVec>> cones1;
    for (const auto& G : f1.cones) {
        std::set<IntVec> s;
        for (std::size_t j = 0; j < 2; ++j) s.insert(G.column(j));
        cones1.insert(s);
    }
    for (const auto& G : f0.cones) {
        std::set<IntVec> s;
        for (std::size_t j = 0; j < 2; ++j) s.insert(pl_map(A2(), 0, PLVariant::phi, G.column(j)));
        CHECK(cones1.count(s) == 1);
    }
}

TEST_CASE("D inner product: duality and inward normals") {
    CHECK(inner_product_D(A2(), IntVec{1, 2}, IntVec{3, 4}) == 11);
    CHECK(inner_product_D(B2(), IntVec{1, 1}, IntVec{1, 1}) == Rat(3, 2));
    for (const auto& c : testing::corpus(200, 5, 12, 2, 79)) {
        PatternPoint p = evaluate_walk(c.B0, c.walk, {false});
        for (std::size_t i = 0; i < p.n(); ++i) {
            for (std::size_t j = 0; j < p.n(); ++j)
                CHECK(inner_product_D(c.B0, p.g(i), scale(c.B0.d(j), p.c(j))) == (i == j ? 1 : 0));
            CHECK(inner_product_D(c.B0, p.c(i), p.g(i)) > 0);
        }
    }
}

TEST_CASE("outgoing test") {
    // column-positive initial matrix: every initial wall is incoming
    ExchangeMatrix P(IntMatrix{{0, 1}, {-1, 0}});
    PatternPoint t0 = initial_point(A2(), false);
    CHECK(outgoing_test(t0, 0));
    CHECK(!outgoing_test(t0, 1));
    // the wall with c+ = (1,1) is outgoing
    PatternPoint t1 = evaluate_walk(A2(), Walk({1}), {false});
    CHECK(t1.c(0) == IntVec{1, 1});
    CHECK(!outgoing_test(t1, 0));
    std::size_t incoming = 0;
    for (const auto& c : testing::corpus(300, 4, 10, 2, 83)) {
        PatternPoint p = evaluate_walk(c.B0, c.walk, {false});
        for (std::size_t i = 0; i < p.n(); ++i) {
            int e = tropical_sign(p, i);
            bool in = outgoing_test(p, i);  // throws if c+ is not a unit vector
            incoming += in;
            bool coherent = true;
            for (std::size_t j = 0; j < p.n(); ++j)
                if (e * p.Bt(j, i) < 0) coherent = false;
            CHECK(in == coherent);
        }
    }
    CHECK(incoming > 100);
    (void)P;
}

TEST_CASE("G-matrix rows are sign-coherent along random walks") {
    for (const auto& c : testing::corpus(300, 5, 14, 2, 89)) {
        PatternPoint p = evaluate_walk(c.B0, c.walk, {false});
        CHECK(rows_sign_coherent(p.G));
    }
}

TEST_CASE("surd sign") {
    CHECK(surd_sign(Rat(3), Rat(-1), Int(8)) == 1);   // 3 - sqrt 8
    CHECK(surd_sign(Rat(3), Rat(-1), Int(10)) == -1); // 3 - sqrt 10
    CHECK(surd_sign(Rat(3), Rat(-1), Int(9)) == 0);
    CHECK(surd_sign(Rat(-2), Rat(1), Int(5)) == 1);
    CHECK(surd_sign(Rat(0), Rat(-1), Int(5)) == -1);
    CHECK(surd_sign(Rat(-1), Rat(7), Int(0)) == -1);
}

TEST_CASE("non-affine rank 2: rays approach the irrational limits monotonically") {
    for (auto [b, c] : std::vector<std::pair<long, long>>{{1, 5}, {5, 1}, {2, 3}, {3, 3}, {1, 7}}) {
        for (bool first : {true, false}) {
            auto gs = rank2_g_sequence(b, c, 40, first);
            // the ray sequence relevant to the limit starts once both coordinates are nonzero
            std::vector<IntVec> seq;
            for (const auto& g : gs)
                if (sign(g[0]) > 0 && sign(g[1]) < 0) seq.push_back(primitive(g));
            REQUIRE(seq.size() > 30);
            bool primed = !first;
            int side = cross_sign_with_limit(seq[0], b, c, primed);
            CHECK(side != 0);
            for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
                CHECK(cross_sign_with_limit(seq[i + 1], b, c, primed) == side);
                // consecutive rays turn toward the limit
                Int cr = seq[i][0] * seq[i + 1][1] - seq[i][1] * seq[i + 1][0];
                CHECK(sign(cr) == side);
            }
            // and get within 1e-6 in slope: |g2/g1 - s| < 1e-6, s = -b/2 -+ sqrt(D)/(2c)
            const IntVec& last = seq.back();
            Int D = Int(b * c) * (b * c - 4);
            Rat slope(last[1], last[0]);
            Rat beta = Rat(primed ? 1 : -1, 2 * c);
            Rat eps(1, 1000000);
            CHECK(surd_sign(slope + Rat(b, 2) - eps, -beta, D) < 0);
            CHECK(surd_sign(slope + Rat(b, 2) + eps, -beta, D) > 0);
        }
    }
}
