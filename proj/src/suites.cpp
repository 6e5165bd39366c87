#include "clusterscat/suites.hpp"

#include "clusterscat/fan.hpp"
#include "clusterscat/scattering.hpp"
#include "clusterscat/theta.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cs {

Report& SuiteResult::operator[](const std::string& identity) {
    for (auto& [k, r] : identities)
        if (k == identity) return r;
    identities.push_back({identity, Report{}});
    return identities.back().second;
}

bool SuiteResult::ok() const {
    return std::all_of(identities.begin(), identities.end(), [](const auto& e) { return e.second.ok(); });
}

std::size_t SuiteResult::checks() const {
    std::size_t s = 0;
    for (const auto& [k, r] : identities) s += r.checks;
    return s;
}

std::string SuiteResult::str() const {
    std::ostringstream os;
    os << "suite " << name << ": " << (ok() ? "pass" : "FAIL") << " (" << checks() << " checks)\n";
    for (const auto& [k, r] : identities) {
        os << "  " << (r.ok() ? "ok  " : "FAIL") << "  " << k << "  [" << r.checks << " checks";
        if (!r.ok()) os << ", " << r.failures.size() << " failed";
        os << "]\n";
        for (std::size_t i = 0; i < std::min<std::size_t>(r.failures.size(), 5); ++i)
            os << "        " << r.failures[i] << "\n";
    }
    return os.str();
}

namespace {

long uniform(long lo, long hi, std::mt19937_64& g) { return std::uniform_int_distribution<long>(lo, hi)(g); }

bool wild(const ExchangeMatrix& B, long limit) {
    for (std::size_t i = 0; i < B.n(); ++i)
        for (std::size_t j = 0; j < B.n(); ++j)
            if (abs(B(i, j) * B(j, i)) > limit) return true;
    return false;
}

ExchangeMatrix rank2(long b, long c) { return ExchangeMatrix(IntMatrix{{0, -c}, {b, 0}}); }

struct NamedType {
    const char* name;
    long b, c;
    bool finite;
};

const std::vector<NamedType>& rank2_types() {
    static const std::vector<NamedType> t{{"A2", 1, 1, true},     {"B2", 2, 1, true},       {"G2", 3, 1, true},
                                          {"A1(1)", 2, 2, false}, {"A2(2)", 4, 1, false}};
    return t;
}

std::string case_str(const RandomCase& c) {
    std::ostringstream os;
    os << c.B0.b().str() << " walk [";
    for (std::size_t i = 0; i < c.walk.size(); ++i) os << (i ? "," : "") << c.walk.dirs()[i] + 1;
    os << "]";
    return os.str();
}

std::size_t budget(const SuiteOptions& o, std::size_t dflt) { return o.budget ? o.budget : dflt; }

IntMatrix scaled_DB(const ExchangeMatrix& B0, const IntMatrix& B, const Int& L) {
    std::size_t n = B0.n();
    IntMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = L / B0.d(i) * B(i, j);
    return out;
}

void dualities(SuiteResult& R, const SuiteOptions& o) {
    for (const auto& c : random_cases(budget(o, 500), 4, 10, 2, o.seed)) {
        std::string tag = case_str(c);
        PatternPoint p = evaluate_walk(c.B0, c.walk, {false, 1});
        PatternPoint q = evaluate_walk(c.B0, c.walk, {false, -1});
        std::size_t n = p.n();
        R["first duality G_t B_t = B0 C_t"].expect(p.G * p.Bt.b() == p.B0.b() * p.C, tag);
        bool second = true;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Rat s = 0;
                for (std::size_t l = 0; l < n; ++l) s += Rat(p.G(l, i) * p.C(l, j)) / Rat(p.B0.d(l));
                if (s != (i == j ? Rat(1) / Rat(p.B0.d(i)) : Rat(0))) second = false;
            }
        R["second duality D^-1 G^T D C = I"].expect(second, tag);
        R["third duality C_t = (G~_t0)^T"].expect(p.C == transposed_pattern_g(p).transpose(), tag);
        R["third duality G_t = (C~_t0)^T"].expect(p.G == transposed_pattern_c(p).transpose(), tag);
        Int L = 1;
        for (std::size_t i = 0; i < n; ++i) L = lcm(L, p.B0.d(i));
        R["C^T (D B0) C = D B_t"].expect(p.C.transpose() * scaled_DB(p.B0, p.B0.b(), L) * p.C == scaled_DB(p.B0, p.Bt.b(), L), tag);
        R["unimodularity |det C| = |det G| = 1"].expect(abs(det(p.C)) == 1 && abs(det(p.G)) == 1, tag);
        R["eps-independence of the C and G rules"].expect(p.C == q.C && p.G == q.G && p.Bt == q.Bt, tag);
        PatternPoint f = initial_point(c.B0, false);
        for (std::size_t k : c.walk.dirs()) f = fast_mutate(f, k);
        R["signed single-product update"].expect(f.C == p.C && f.G == p.G, tag);
        R["C columns sign-coherent"].expect(columns_sign_coherent(p.C), tag);
        R["G rows sign-coherent"].expect(rows_sign_coherent(p.G), tag);
    }
}

void sign_coherence(SuiteResult& R, const SuiteOptions& o) {
    for (const auto& c : random_cases(budget(o, 500), 4, 10, 2, o.seed)) {
        PatternPoint p = evaluate_walk(c.B0, c.walk, {false});
        R["C columns sign-coherent"].expect(columns_sign_coherent(p.C), case_str(c));
        R["G rows sign-coherent"].expect(rows_sign_coherent(p.G), case_str(c));
    }
    // F-polynomials on walks guarded against exponential growth
    for (const auto& c : random_cases(budget(o, 500), 4, 10, 1, o.seed + 1, 9)) {
        PatternPoint p = initial_point(c.B0);
        for (std::size_t k : c.walk.dirs()) p = mutate_point(p, k);
        for (const auto& f : p.F) {
            R["F constant term 1"].expect(f.constant_term() == 1, case_str(c));
            R["F coefficients nonnegative"].expect(f.nonnegative(), case_str(c));
            R["F is a polynomial"].expect(f.is_polynomial(), case_str(c));
        }
    }
}

void laurent(SuiteResult& R, const SuiteOptions& o) {
    for (const auto& c : random_cases(budget(o, 100), 3, 8, 1, o.seed, 9)) {
        std::size_t n = c.B0.n();
        PatternPoint p = initial_point(c.B0);
        std::vector<Laurent> xs;
        for (std::size_t i = 0; i < n; ++i) xs.push_back(Laurent::variable(n, i));
        bool exact = true;
        for (std::size_t k : c.walk.dirs()) {
            try {
                xs = mutate_x_direct(xs, p.Bt, k);
            } catch (const InvariantError&) {
                exact = false;
                break;
            }
            p = mutate_point(p, k);
        }
        R["every exchange division is exact"].expect(exact, case_str(c));
        if (!exact) continue;
        for (std::size_t i = 0; i < n; ++i)
            R["direct mutation = separation formula"].expect(x_variable(p, i) == xs[i], case_str(c));
    }
}

void tropical(SuiteResult& R, const SuiteOptions& o) {
    SFRational r{mono({1, 2, 2}, 3) + mono({2, 1, 1}, 2), mono({0, 2, 0}, 3) + mono({2, 2, 0}) + mono({1, 3, 1})};
    R["worked example u1 u2^-1 u3"].expect(tropicalize(r) == IntVec{1, -1, 1}, "three-variable fraction");
    for (const auto& c : random_cases(budget(o, 200), 4, 8, 1, o.seed, 9)) {
        PatternPoint p = evaluate_walk(c.B0, c.walk);
        for (std::size_t i = 0; i < p.n(); ++i) {
            R["trop(F) = 1"].expect(is_zero(tropicalize(p.F[i])), case_str(c));
            R["trop(y_i;t) = y^c_i;t"].expect(tropicalize(y_variable(p, i)) == p.c(i), case_str(c));
        }
    }
}

void separation(SuiteResult& R, const SuiteOptions& o) {
    for (const auto& c : random_cases(budget(o, 60), 3, 6, 1, o.seed, 9)) {
        FGOptions f;
        f.seed = o.seed;
        R["tau/rho decomposition and separation formulas"].merge(fock_goncharov_check(c.B0, c.walk, f));
    }
}

void fan(SuiteResult& R, const SuiteOptions& o) {
    for (const auto& T : rank2_types()) {
        GFan f = build_g_fan(rank2(T.b, T.c), 12);
        R["completeness flag matches finite type"].expect(f.complete == T.finite, T.name);
        if (T.finite) R["verify_fan on finite types"].merge(verify_fan(f));
    }
    GFan wild_fan = build_g_fan(rank2(1, 5), 12);
    R["completeness flag matches finite type"].expect(!wild_fan.complete, "b=1,c=5");
    std::size_t count = 0;
    for (const auto& c : random_cases(budget(o, 60), 3, 0, 2, o.seed)) {
        if (c.B0.n() != 3) continue;
        if (++count > budget(o, 20)) break;
        R["verify_fan on random rank-3 fans, depth 5"].merge(verify_fan(build_g_fan(c.B0, 5)));
    }
}

void pl(SuiteResult& R, const SuiteOptions& o) {
    std::mt19937_64 g(o.seed);
    for (const auto& c : random_cases(budget(o, 200), 4, 8, 2, o.seed)) {
        std::size_t n = c.B0.n();
        PatternPoint p = evaluate_walk(c.B0, c.walk, {false});
        for (std::size_t k = 0; k < n; ++k) {
            RatVec v(n);
            for (auto& x : v) {
                x = Rat(uniform(-9, 9, g), uniform(1, 4, g));
                x.canonicalize();
            }
            RatVec phi = pl_map(c.B0, k, PLVariant::phi, v);
            R["phi = eta o T"].expect(phi == pl_map(c.B0, k, PLVariant::eta, pl_map(c.B0, k, PLVariant::T, v)), case_str(c));
            R["phi involution"].expect(pl_map(c.B0.mutate(k), k, PLVariant::phi, phi) == v, case_str(c));
            std::vector<std::size_t> w{k};
            for (auto d : c.walk.dirs()) w.push_back(d);
            PatternPoint q = evaluate_walk(c.B0.mutate(k), Walk(w), {false});
            bool cone = true;
            for (std::size_t i = 0; i < n; ++i) cone = cone && pl_map(c.B0, k, PLVariant::phi, p.g(i)) == q.g(i);
            R["cone transport phi(sigma(G_t^t0)) = sigma(G_t^t1)"].expect(cone, case_str(c));
        }
    }
}

void consistency(SuiteResult& R, const SuiteOptions& o) {
    for (const auto& T : rank2_types()) {
        ExchangeMatrix B = rank2(T.b, T.c);
        ScatteringDiagram D = complete_rank2(B, o.ell);
        R["completed diagram consistent"].expect(check_consistency_rank2(D, o.ell), T.name);
        ScatteringDiagram cl = normalize(cluster_walls(B, 2 * static_cast<std::size_t>(o.ell) + 4, o.ell), o.ell);
        R["cluster walls consistent iff finite type"].expect(check_consistency_rank2(cl, o.ell) == T.finite, T.name);
        for (const auto& w : D.walls) {
            std::vector<Int> ex = factorize(w.f, max_power(w.f, o.ell));
            R["wall functions factor with positive exponents"].expect(
                std::all_of(ex.begin(), ex.end(), [](const Int& e) { return sgn(e) >= 0; }), T.name);
            R["incoming walls are exactly those with unit normal"].expect(w.incoming == (degree(w.f.n0) == 1), T.name);
        }
    }
}

void mutation(SuiteResult& R, const SuiteOptions& o) {
    long ell = std::min(o.ell, 6L);
    for (const auto& T : rank2_types()) {
        ExchangeMatrix B = rank2(T.b, T.c);
        for (std::size_t k = 0; k < 2; ++k) {
            long L = mutation_degree_factor(B, k);
            ScatteringDiagram mut = mutate_diagram(complete_rank2(B, ell * L), k);
            R["rebased T_k(D) equivalent to the completion of mu_k(B0)"].expect(
                equivalent(mut, complete_rank2(B.mutate(k), ell), ell), std::string(T.name) + " k=" + std::to_string(k + 1));
        }
    }
    // cluster walls of any rank correspond under mutation
    for (const auto& c : random_cases(budget(o, 60), 4, 6, 2, o.seed, 9)) {
        if (sgn(det(c.B0.b())) == 0) continue;
        std::size_t n = c.B0.n();
        PatternPoint p = evaluate_walk(c.B0, c.walk, {false});
        for (std::size_t k = 0; k < n; ++k) {
            std::vector<std::size_t> w1{k};
            for (auto d : c.walk.dirs()) w1.push_back(d);
            PatternPoint q = evaluate_walk(c.B0.mutate(k), Walk(w1), {false});
            for (std::size_t i = 0; i < n; ++i) {
                std::vector<IntVec> face;
                std::set<IntVec> expect;
                for (std::size_t j = 0; j < n; ++j)
                    if (j != i) {
                        face.push_back(p.g(j));
                        expect.insert(primitive(q.g(j)));
                    }
                ScatteringDiagram D{c.B0, 1L << 40, {{face, WallFunction::binomial(scale(tropical_sign(p, i), p.c(i))), false}}};
                ScatteringDiagram M = mutate_diagram(D, k);
                bool ok = M.walls.size() == 1;
                if (ok) {
                    std::set<IntVec> got;
                    for (const auto& v : M.walls[0].support) got.insert(primitive(v));
                    ok = got == expect && M.walls[0].f == WallFunction::binomial(scale(tropical_sign(q, i), q.c(i)));
                }
                R["cluster wall of t maps to cluster wall of t under mu_k"].expect(ok, case_str(c));
            }
        }
    }
}

void theta_suite(SuiteResult& R, const SuiteOptions& o) {
    std::mt19937_64 g(o.seed);
    const long ell = o.ell;
    for (const auto& T : rank2_types()) {
        if (std::string(T.name) == "A2(2)") continue;
        ExchangeMatrix B = rank2(T.b, T.c);
        ScatteringDiagram D = complete_rank2(B, ell);
        GFan f = build_g_fan(B, T.finite ? 12 : 6);
        auto interior = [](const IntMatrix& G) { return G * RatVec{Rat(31, 3), Rat(72, 7)}; };
        RatVec Q0 = interior(IntMatrix::identity(2));
        for (std::size_t t = 0; t < f.cones.size(); ++t) {
            const IntMatrix& G = f.cones[t];
            for (const IntVec& w : std::vector<IntVec>{{1, 0}, {0, 1}, {1, 1}, {1, 2}}) {
                ThetaResult th = theta(D, G * w, interior(G), ell);
                R["chamber monomial theta_Q,m0 = x^m0"].expect(th.lines.size() == 1 && th.series.body.is_constant(1), T.name);
            }
            PatternPoint p = evaluate_walk(B, f.walks[t]);
            for (std::size_t i = 0; i < 2; ++i) {
                ThetaResult th = theta(D, p.g(i), Q0, ell);
                std::string tag = std::string(T.name) + " g=" + vec_str(p.g(i));
                if (T.finite) R["theta_Q,g_i;t = x_i;t (finite types, every vertex)"].expect(th.series.body == p.F[i].truncated(ell), tag);
                else R["theta_Q,g_i;t = x_i;t truncated (affine, depth <= 6)"].expect(th.series.body == p.F[i].truncated(ell), tag);
            }
        }
        for (int r = 0; r < 12; ++r) {
            auto pt = [&] { return RatVec{Rat(uniform(-40, 40, g), uniform(1, 13, g)), Rat(uniform(-40, 40, g), uniform(1, 13, g))}; };
            RatVec Q = pt(), Q2 = pt();
            IntVec m0{uniform(-3, 3, g), uniform(-3, 3, g)};
            if (is_zero(m0)) continue;
            ThetaResult a, b;
            try {
                a = theta(D, m0, Q, ell);
                b = theta(D, m0, Q2, ell);
            } catch (const std::invalid_argument&) {
                continue;  // endpoint on a wall
            }
            std::string tag = std::string(T.name) + " m0=" + vec_str(m0);
            R["transport theta_Q' = p_gamma(theta_Q)"].expect(path_ordered_product(B, arc_path(D, a.Q, b.Q), a.series) == b.series, tag);
            bool pos = true;
            for (const auto* th : {&a, &b}) {
                for (const auto& [e, c] : th->series.body.terms()) pos = pos && sgn(c) >= 0;
                for (const auto& line : th->lines) pos = pos && sgn(line.coeff()) > 0 && check_broken_line(D, line, ell);
            }
            R["positivity of theta and of every broken line"].expect(pos, tag);
        }
    }
}

void applications(SuiteResult& R, const SuiteOptions&) {
    std::vector<IntMatrix> finite{IntMatrix{{0, -1}, {1, 0}}, IntMatrix{{0, -1}, {2, 0}}, IntMatrix{{0, -1}, {3, 0}},
                                  IntMatrix{{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}}, IntMatrix{{0, 1, 0}, {-1, 0, 2}, {0, -1, 0}}};
    for (const auto& b : finite) {
        ExchangeMatrix B(b);
        std::string tag = b.str();
        auto pts = pattern_ball(B, B.n() == 2 ? 8 : 7);
        std::map<IntVec, Laurent> by_g;
        bool function = true;
        for (const auto& p : pts)
            for (std::size_t i = 0; i < p.n(); ++i) {
                Laurent x = x_variable(p, i);
                auto [it, fresh] = by_g.emplace(p.g(i), x);
                function = function && it->second == x;
            }
        std::set<std::string> xs;
        for (const auto& [g, x] : by_g) xs.insert(x.str());
        R["g-vector <-> x-variable bijection"].expect(function && xs.size() == by_g.size(), tag);
        std::size_t pairs = 0;
        bool detrop = true;
        for (std::size_t a = 0; a < pts.size(); a += 3)
            for (std::size_t c = a + 1; c < pts.size(); ++c) {
                auto inv = column_permutation(pts[a].G, pts[c].G);
                if (!inv) continue;
                ++pairs;
                detrop = detrop && cluster(pts[a]) == permute_cluster(cluster(pts[c]), *inv);
            }
        R["detropicalization G_t = nu G_t' => x_t = nu x_t'"].expect(detrop && pairs > 0, tag);
    }
    GFan a2 = build_g_fan(rank2(1, 1), 8);
    R["A2 cluster complex: 5 vertices, 5 maximal simplices"].expect(a2.rays().size() == 5 && a2.cones.size() == 5, "A2");
}

using SuiteFn = void (*)(SuiteResult&, const SuiteOptions&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
    static const std::vector<std::pair<std::string, SuiteFn>> r{
        {"dualities", dualities},     {"sign-coherence", sign_coherence}, {"laurent", laurent},
        {"tropical", tropical},       {"separation", separation},         {"fan", fan},
        {"pl", pl},                   {"consistency-rank2", consistency}, {"mutation", mutation},
        {"theta", theta_suite},       {"applications", applications}};
    return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [k, f] : registry()) v.push_back(k);
        v.push_back("all");
        return v;
    }();
    return names;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& opt) {
    SuiteResult R{name, {}};
    bool found = false;
    for (const auto& [k, f] : registry())
        if (name == "all" || name == k) {
            f(R, opt);
            found = true;
        }
    if (!found) throw std::invalid_argument("unknown suite '" + name + "'");
    return R;
}

std::vector<RandomCase> random_cases(std::size_t count, std::size_t max_rank, std::size_t max_depth, long smax,
                                     std::uint64_t seed, long guard) {
    std::mt19937_64 g(seed);
    std::vector<RandomCase> out;
    while (out.size() < count) {
        std::size_t n = static_cast<std::size_t>(uniform(2, static_cast<long>(max_rank), g));
        std::vector<long> delta(n);
        for (auto& x : delta) x = uniform(1, 2, g);
        IntMatrix b(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                long s = uniform(-smax, smax, g);
                b(i, j) = delta[i] * s;
                b(j, i) = -delta[j] * s;
            }
        ExchangeMatrix B(b);
        std::size_t len = static_cast<std::size_t>(uniform(0, static_cast<long>(max_depth), g));
        std::vector<std::size_t> d;
        ExchangeMatrix Bt = B;
        while (d.size() < len) {
            std::size_t k = static_cast<std::size_t>(uniform(0, static_cast<long>(n) - 1, g));
            if (!d.empty() && d.back() == k) continue;
            if (guard > 0) {
                Bt = Bt.mutate(k);
                if (wild(Bt, guard)) break;
            }
            d.push_back(k);
        }
        out.push_back({B, Walk(d)});
    }
    return out;
}

std::vector<PatternPoint> pattern_ball(const ExchangeMatrix& B0, std::size_t depth, bool with_f) {
    std::vector<PatternPoint> all{initial_point(B0, with_f)}, layer = all;
    for (std::size_t d = 0; d < depth; ++d) {
        std::vector<PatternPoint> next;
        for (const auto& p : layer)
            for (std::size_t k = 0; k < B0.n(); ++k) {
                if (!p.walk.empty() && p.walk.dirs().back() == k) continue;
                next.push_back(mutate_point(p, k));
            }
        all.insert(all.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    return all;
}

bool columns_sign_coherent(const IntMatrix& m) { return rows_sign_coherent(m.transpose()); }

IntMatrix transposed_pattern_c(const PatternPoint& p) {
    return evaluate_walk(p.Bt.transpose(), p.walk.reversed(), {false, 1}).C;
}

}  // namespace cs
