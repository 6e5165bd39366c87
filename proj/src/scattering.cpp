#include "clusterscat/scattering.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <sstream>

namespace cs {

namespace {

Int to_integer(const Rat& r, const char* what) {
    if (r.get_den() != 1) throw InvariantError(std::string("non-integral ") + what);
    return r.get_num();
}

std::size_t qrank(std::vector<RatVec> rows) {
    std::size_t rank = 0;
    std::size_t cols = rows.empty() ? 0 : rows[0].size();
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t piv = rank;
        while (piv < rows.size() && sign(rows[piv][c]) == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || sign(rows[r][c]) == 0) continue;
            Rat f = rows[r][c] / rows[rank][c];
            for (std::size_t j = c; j < cols; ++j) rows[r][j] -= f * rows[rank][j];
        }
        ++rank;
    }
    return rank;
}

std::size_t vec_rank(const std::vector<IntVec>& vs) {
    std::vector<RatVec> rows;
    for (const auto& v : vs) rows.emplace_back(v.begin(), v.end());
    return qrank(rows);
}

// unique solution of sum_j x_j S_j = v when the S_j are independent and v is in their span
std::optional<RatVec> solve_columns(const std::vector<IntVec>& S, const IntVec& v) {
    std::size_t n = v.size(), s = S.size();
    std::vector<RatVec> aug(n, RatVec(s + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < s; ++j) aug[i][j] = S[j][i];
        aug[i][s] = v[i];
    }
    std::size_t row = 0;
    std::vector<std::size_t> pivcol;
    for (std::size_t c = 0; c < s; ++c) {
        std::size_t piv = row;
        while (piv < n && sign(aug[piv][c]) == 0) ++piv;
        if (piv == n) return std::nullopt;  // dependent columns
        std::swap(aug[piv], aug[row]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == row || sign(aug[r][c]) == 0) continue;
            Rat f = aug[r][c] / aug[row][c];
            for (std::size_t j = c; j <= s; ++j) aug[r][j] -= f * aug[row][j];
        }
        ++row;
    }
    for (std::size_t r = row; r < n; ++r)
        if (sign(aug[r][s]) != 0) return std::nullopt;
    RatVec x(s);
    for (std::size_t c = 0; c < s; ++c) x[c] = aug[c][s] / aug[c][c];
    return x;
}

Laurent function_as_poly(const WallFunction& f) {
    std::size_t n = f.n0.size();
    Laurent p = Laurent::constant(n, 1);
    for (std::size_t j = 0; j < f.coeffs.size(); ++j)
        if (sgn(f.coeffs[j]) != 0) p += mono(scale(Int(static_cast<long>(j + 1)), f.n0), f.coeffs[j]);
    return p;
}

IntVec canonical_ray(const IntVec& v) { return primitive(v); }

std::vector<IntVec> unique_primitive(const std::vector<IntVec>& gens) {
    std::set<IntVec> s;
    for (const auto& g : gens)
        if (!is_zero(g)) s.insert(primitive(g));
    return {s.begin(), s.end()};
}

// generators of cone(gens) cap {s m_k >= 0}
std::vector<IntVec> split_half(const std::vector<IntVec>& gens, std::size_t k, int s) {
    std::vector<IntVec> out;
    for (const auto& g : gens)
        if (s * sign(g[k]) >= 0) out.push_back(g);
    for (const auto& g : gens)
        for (const auto& h : gens)
            if (s * sign(g[k]) > 0 && s * sign(h[k]) < 0) out.push_back(add(scale(abs(g[k]), h), scale(abs(h[k]), g)));
    return unique_primitive(out);
}

WallFunction truncate_function(WallFunction f, long ell) {
    long d = degree(f.n0);
    if (d > 0) {
        std::size_t N = static_cast<std::size_t>(std::max(0L, ell / d));
        if (f.coeffs.size() > N) f.coeffs.resize(N);
    }
    f.trim();
    return f;
}

WallFunction multiply(const WallFunction& a, const WallFunction& b, long ell) {
    if (a.n0 != b.n0) throw std::invalid_argument("cannot merge walls with different normals on one support");
    std::size_t N = a.coeffs.size() + b.coeffs.size();
    long d = degree(a.n0);
    if (d > 0) N = std::min(N, static_cast<std::size_t>(ell / d));
    USeries p = useries_mul(to_useries(a, N), to_useries(b, N), N);
    WallFunction r{a.n0, std::vector<Int>(p.begin() + 1, p.end())};
    r.trim();
    return r;
}

}  // namespace

bool WallFunction::trivial() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](const Int& c) { return sgn(c) == 0; });
}

void WallFunction::trim() {
    while (!coeffs.empty() && sgn(coeffs.back()) == 0) coeffs.pop_back();
}

std::string WallFunction::str() const { return function_as_poly(*this).str("yhat"); }

TruncatedSeries TruncatedSeries::monomial(const IntVec& m, long ell) {
    return {m, Laurent::constant(m.size(), 1), ell};
}

TruncatedSeries TruncatedSeries::truncated(long deg) const { return {base, body.truncated(deg), std::min(ell, deg)}; }

Laurent TruncatedSeries::to_x(const ExchangeMatrix& B0) const {
    return body.monomial_substitute(B0.b()).shifted(to_exp(base));
}

std::string TruncatedSeries::str() const { return "x^" + vec_str(base) + " * (" + body.str("yhat") + ")"; }

long degree(const IntVec& n) {
    Int s = 0;
    for (const auto& x : n) s += x;
    return s.get_si();
}

IntVec p_star(const ExchangeMatrix& B0, const IntVec& n) { return B0.b() * n; }

void require_nonsingular(const ExchangeMatrix& B0) {
    if (sgn(det(B0.b())) == 0) throw std::invalid_argument("exchange matrix is singular; p* is not injective");
}

Rat pairing(const ExchangeMatrix& B0, const IntVec& n, const IntVec& m) { return inner_product_D(B0.skew(), n, m); }

IntVec minimal_multiple(const ExchangeMatrix& B0, const IntVec& n0) {
    Int c = 1;
    for (std::size_t i = 0; i < n0.size(); ++i)
        if (sgn(n0[i]) != 0) c = lcm(c, Int(B0.d(i) / gcd(B0.d(i), n0[i])));
    return scale(c, n0);
}

int crossing_sign(const ExchangeMatrix& B0, const IntVec& n0, const IntVec& velocity) {
    int s = sign(pairing(B0, n0, velocity));
    if (s == 0) throw std::invalid_argument("curve is not transversal to the wall");
    return s < 0 ? 1 : -1;
}

USeries useries_mul(const USeries& a, const USeries& b, std::size_t N) {
    USeries r(N + 1);
    for (std::size_t i = 0; i < a.size() && i <= N; ++i) {
        if (sgn(a[i]) == 0) continue;
        for (std::size_t j = 0; j < b.size() && i + j <= N; ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

USeries useries_pow(const USeries& a, long e, std::size_t N) {
    USeries base = a;
    base.resize(N + 1);
    if (e < 0) {
        // inverse of a series with constant term 1
        USeries inv(N + 1);
        inv[0] = 1;
        for (std::size_t k = 1; k <= N; ++k) {
            Int s = 0;
            for (std::size_t j = 1; j <= k; ++j) s += base[j] * inv[k - j];
            inv[k] = -s;
        }
        base = inv;
        e = -e;
    }
    USeries r(N + 1);
    r[0] = 1;
    while (e > 0) {
        if (e & 1) r = useries_mul(r, base, N);
        e >>= 1;
        if (e) base = useries_mul(base, base, N);
    }
    return r;
}

USeries to_useries(const WallFunction& f, std::size_t N) {
    USeries s(N + 1);
    s[0] = 1;
    for (std::size_t j = 0; j < f.coeffs.size() && j + 1 <= N; ++j) s[j + 1] = f.coeffs[j];
    return s;
}

TruncatedSeries wall_cross(const ExchangeMatrix& B0, const WallFunction& f, int eps, const TruncatedSeries& s) {
    long dn = degree(f.n0);
    if (dn <= 0) throw std::invalid_argument("wall normal must lie in the positive cone to cross");
    std::size_t n = B0.n();
    IntVec np = minimal_multiple(B0, f.n0);
    std::size_t N = static_cast<std::size_t>(std::max(0L, s.ell / dn));
    std::map<long, USeries> cache;
    Laurent out(n);
    for (const auto& [a, c] : s.body.terms()) {
        IntVec av = to_intvec(a);
        IntVec m = add(s.base, B0.b() * av);
        long e = eps * to_integer(pairing(B0, np, m), "wall-crossing exponent").get_si();
        auto it = cache.find(e);
        if (it == cache.end()) it = cache.emplace(e, useries_pow(to_useries(f, N), e, N)).first;
        const USeries& g = it->second;
        long room = s.ell - total_degree(a);
        if (room < 0) continue;
        std::size_t J = std::min<std::size_t>(static_cast<std::size_t>(room / dn), N);
        for (std::size_t j = 0; j <= J; ++j)
            if (sgn(g[j]) != 0) out.add_term(exp_add(a, to_exp(scale(Int(static_cast<long>(j)), f.n0))), c * g[j]);
    }
    return {s.base, out, s.ell};
}

TruncatedSeries path_ordered_product(const ExchangeMatrix& B0, const std::vector<Crossing>& path,
                                     const TruncatedSeries& s) {
    TruncatedSeries r = s;
    for (const auto& c : path) r = wall_cross(B0, c.f, c.eps, r);
    return r;
}

TruncatedSeries path_ordered_product(const ScatteringDiagram& D,
                                     const std::vector<std::pair<std::size_t, int>>& crossings,
                                     const TruncatedSeries& s) {
    std::vector<Crossing> path;
    for (const auto& [w, e] : crossings) path.push_back({D.walls.at(w).f, e});
    return path_ordered_product(D.B0, path, s);
}

std::vector<Crossing> cluster_path(const ExchangeMatrix& B0, const Walk& w) {
    std::vector<PatternPoint> pts{initial_point(B0, false)};
    for (std::size_t j = 0; j + 1 < w.size(); ++j) pts.push_back(mutate_point(pts.back(), w.dirs()[j]));
    std::vector<Crossing> path;
    for (std::size_t j = w.size(); j-- > 0;) {
        std::size_t k = w.dirs()[j];
        int e = tropical_sign(pts[j], k);
        path.push_back({WallFunction::binomial(scale(e, pts[j].c(k))), -e});
    }
    return path;
}

bool cone_contains(const std::vector<IntVec>& gens, const IntVec& v) {
    if (is_zero(v)) return true;
    std::size_t m = gens.size(), n = v.size();
    // Caratheodory: some independent subset contains v with nonnegative coefficients
    for (std::size_t mask = 1; mask < (std::size_t(1) << m); ++mask) {
        std::vector<IntVec> S;
        for (std::size_t j = 0; j < m; ++j)
            if (mask >> j & 1) S.push_back(gens[j]);
        if (S.size() > n) continue;
        auto x = solve_columns(S, v);
        if (x && std::all_of(x->begin(), x->end(), [](const Rat& r) { return sign(r) >= 0; })) return true;
    }
    return false;
}

bool is_incoming(const ExchangeMatrix& B0, const Wall& w) { return cone_contains(w.support, p_star(B0, w.f.n0)); }

ScatteringDiagram initial_diagram(const ExchangeMatrix& B0, long ell) {
    require_nonsingular(B0);
    std::size_t n = B0.n();
    ScatteringDiagram D{B0, ell, {}};
    for (std::size_t i = 0; i < n; ++i) {
        Wall w;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) {
                w.support.push_back(unit(n, j));
                w.support.push_back(negate(unit(n, j)));
            }
        w.f = WallFunction::binomial(unit(n, i));
        w.incoming = true;
        D.walls.push_back(w);
    }
    return D;
}

ScatteringDiagram cluster_walls(const ExchangeMatrix& B0, std::size_t depth, long ell) {
    require_nonsingular(B0);
    std::size_t n = B0.n();
    ScatteringDiagram D{B0, ell, {}};
    std::set<std::vector<IntVec>> seen_cones;
    std::set<std::pair<std::vector<IntVec>, IntVec>> seen_walls;
    auto key = [](const IntMatrix& G) {
        std::vector<IntVec> k;
        for (std::size_t j = 0; j < G.cols(); ++j) k.push_back(G.column(j));
        std::sort(k.begin(), k.end());
        return k;
    };
    std::vector<PatternPoint> layer{initial_point(B0, false)};
    seen_cones.insert(key(layer[0].G));
    for (std::size_t d = 0;; ++d) {
        for (const auto& p : layer)
            for (std::size_t i = 0; i < n; ++i) {
                std::vector<IntVec> face;
                for (std::size_t j = 0; j < n; ++j)
                    if (j != i) face.push_back(p.g(j));
                std::sort(face.begin(), face.end());
                IntVec n0 = scale(tropical_sign(p, i), p.c(i));
                if (!seen_walls.insert({face, n0}).second) continue;
                Wall w{face, WallFunction::binomial(n0), false};
                w.incoming = is_incoming(B0, w);
                D.walls.push_back(std::move(w));
            }
        if (d == depth) break;
        std::vector<PatternPoint> next;
        for (const auto& p : layer)
            for (std::size_t k = 0; k < n; ++k) {
                if (!p.walk.empty() && p.walk.dirs().back() == k) continue;
                PatternPoint q = mutate_point(p, k);
                if (seen_cones.insert(key(q.G)).second) next.push_back(std::move(q));
            }
        if (next.empty()) break;
        layer = std::move(next);
    }
    return D;
}

int angle_compare(const IntVec& a, const IntVec& b) {
    auto half = [](const IntVec& v) { return (sgn(v[1]) > 0 || (sgn(v[1]) == 0 && sgn(v[0]) < 0)) ? 0 : 1; };
    int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb ? -1 : 1;
    int c = sign(Int(a[0] * b[1] - a[1] * b[0]));
    return c > 0 ? -1 : c < 0 ? 1 : 0;
}

std::vector<std::pair<IntVec, WallFunction>> rays_of(const ScatteringDiagram& D) {
    if (D.B0.n() != 2) throw std::invalid_argument("rank-2 operation on a diagram of rank " + std::to_string(D.B0.n()));
    std::vector<std::pair<IntVec, WallFunction>> out;
    for (const auto& w : D.walls)
        for (const auto& r : unique_primitive(w.support)) out.push_back({r, w.f});
    std::stable_sort(out.begin(), out.end(),
                     [](const auto& a, const auto& b) { return angle_compare(a.first, b.first) < 0; });
    return out;
}

TruncatedSeries loop_product(const ScatteringDiagram& D, const IntVec& m, long ell) {
    TruncatedSeries s = TruncatedSeries::monomial(m, ell);
    for (const auto& [v, f] : rays_of(D)) {
        IntVec vel{-v[1], v[0]};
        s = wall_cross(D.B0, f, crossing_sign(D.B0, f.n0, vel), s);
    }
    return s;
}

ScatteringDiagram complete_rank2(const ExchangeMatrix& B0, long ell) {
    if (B0.n() != 2) throw std::invalid_argument("complete_rank2 requires rank 2");
    require_nonsingular(B0);
    std::map<IntVec, WallFunction> rays;
    for (std::size_t i = 0; i < 2; ++i) {
        IntVec e = unit(2, 1 - i);
        rays[e] = WallFunction::binomial(unit(2, i));
        rays[negate(e)] = WallFunction::binomial(unit(2, i));
    }
    auto diagram = [&](long l) {
        ScatteringDiagram D{B0, l, {}};
        for (const auto& [v, f] : rays) D.walls.push_back({{v}, truncate_function(f, l), false});
        return D;
    };
    for (long k = 1; k <= ell; ++k) {
        ScatteringDiagram D = diagram(k);
        std::map<IntVec, std::array<Int, 2>> delta;
        for (std::size_t i = 0; i < 2; ++i) {
            TruncatedSeries s = loop_product(D, unit(2, i), k);
            for (const auto& [a, c] : s.body.terms()) {
                if (total_degree(a) == 0) {
                    if (c != 1) throw InvariantError("loop product changed the leading term");
                    continue;
                }
                if (total_degree(a) < k) throw InvariantError("loop product is not consistent below degree " +
                                                              std::to_string(k));
                delta[to_intvec(a)][i] = c;
            }
        }
        for (const auto& [a, d] : delta) {
            IntVec n0 = primitive(a);
            if (n0 == unit(2, 0) || n0 == unit(2, 1)) throw InvariantError("correction on an incoming direction");
            long j = degree(a) / degree(n0);
            IntVec np = minimal_multiple(B0, n0);
            IntVec v = primitive(negate(p_star(B0, n0)));
            int eps = crossing_sign(B0, n0, IntVec{-v[1], v[0]});
            std::optional<Rat> c;
            for (std::size_t i = 0; i < 2; ++i) {
                Rat p = pairing(B0, np, unit(2, i));
                if (sign(p) == 0) {
                    if (sgn(d[i]) != 0) throw InvariantError("discrepancy outside the wall's Lie algebra");
                    continue;
                }
                Rat ci = Rat(-d[i]) / (eps * p);
                if (c && *c != ci) throw InvariantError("inconsistent correction at " + vec_str(a));
                c = ci;
            }
            if (!c) continue;
            Int cc = to_integer(*c, "correction coefficient");
            WallFunction add{n0, std::vector<Int>(static_cast<std::size_t>(j), Int(0))};
            add.coeffs.back() = cc;
            auto it = rays.find(v);
            if (it == rays.end())
                rays[v] = add;
            else
                it->second = multiply(it->second, add, ell);
        }
    }
    ScatteringDiagram D = diagram(ell);
    return normalize(D, ell);
}

bool check_consistency_rank2(const ScatteringDiagram& D, long ell) {
    for (std::size_t i = 0; i < 2; ++i) {
        TruncatedSeries s = loop_product(D, unit(2, i), ell);
        if (!s.body.is_constant(1)) return false;
    }
    return true;
}

ScatteringDiagram apply_T(const ScatteringDiagram& D, std::size_t k) {
    std::size_t n = D.B0.n();
    IntMatrix S = IntMatrix::identity(n) + col_mask(D.B0.b(), k);
    ScatteringDiagram out{D.B0, D.ell, {}};
    IntVec ek = unit(n, k);
    for (const auto& w : D.walls) {
        if (w.f.n0 == ek) {
            out.walls.push_back({w.support, WallFunction{negate(ek), w.f.coeffs}, false});
            continue;
        }
        std::vector<IntVec> minus = split_half(w.support, k, -1);
        if (vec_rank(minus) == n - 1) out.walls.push_back({minus, w.f, false});
        std::vector<IntVec> plus = split_half(w.support, k, 1);
        if (vec_rank(plus) == n - 1) {
            std::vector<IntVec> img;
            for (const auto& g : plus) img.push_back(S * g);
            IntVec n1 = w.f.n0;
            n1[k] += p_star(D.B0, w.f.n0)[k];
            out.walls.push_back({unique_primitive(img), WallFunction{n1, w.f.coeffs}, false});
        }
    }
    return out;
}

ScatteringDiagram rebase(const ScatteringDiagram& D, std::size_t k) {
    std::size_t n = D.B0.n();
    ExchangeMatrix B1 = D.B0.mutate(k);
    IntMatrix eta = jk(n, k) + col_mask(positive_part(-D.B0.b()), k);
    IntMatrix E = jk(n, k) + row_mask(positive_part(D.B0.b()), k);
    ScatteringDiagram out{B1, D.ell, {}};
    for (const auto& w : D.walls) {
        Wall r;
        for (const auto& g : w.support) r.support.push_back(eta * g);
        r.support = unique_primitive(r.support);
        r.f = truncate_function(WallFunction{E * w.f.n0, w.f.coeffs}, D.ell);
        if (r.f.trivial()) continue;
        r.incoming = is_incoming(B1, r);
        out.walls.push_back(std::move(r));
    }
    return out;
}

ScatteringDiagram mutate_diagram(const ScatteringDiagram& D, std::size_t k) {
    require_nonsingular(D.B0);
    if (k >= D.B0.n()) throw std::out_of_range("direction out of range");
    return rebase(apply_T(D, k), k);
}

long mutation_degree_factor(const ExchangeMatrix& B0, std::size_t k) {
    std::size_t n = B0.n();
    IntMatrix E = jk(n, k) + row_mask(positive_part(B0.b()), k);
    IntMatrix back = (IntMatrix::identity(n) - row_mask(B0.b(), k)) * E;
    long L = 1;
    for (const IntMatrix* M : {&E, &back})
        for (std::size_t j = 0; j < n; ++j) {
            Int s = 0;
            for (std::size_t i = 0; i < n; ++i) s += abs((*M)(i, j));
            L = std::max(L, s.get_si());
        }
    return L;
}

ScatteringDiagram normalize(const ScatteringDiagram& D) { return normalize(D, D.ell); }

ScatteringDiagram normalize(const ScatteringDiagram& D, long ell) {
    ScatteringDiagram out{D.B0, ell, {}};
    if (D.B0.n() == 2) {
        std::vector<std::pair<IntVec, WallFunction>> merged;
        for (auto& [v, f] : rays_of(D)) {
            WallFunction t = truncate_function(f, ell);
            auto it = std::find_if(merged.begin(), merged.end(),
                                   [&](const auto& e) { return e.first == v && e.second.n0 == t.n0; });
            if (it == merged.end())
                merged.push_back({v, t});
            else
                it->second = multiply(it->second, t, ell);
        }
        std::vector<bool> used(merged.size(), false);
        for (std::size_t a = 0; a < merged.size(); ++a) {
            if (used[a] || merged[a].second.trivial()) continue;
            used[a] = true;
            Wall w{{merged[a].first}, merged[a].second, false};
            for (std::size_t b = a + 1; b < merged.size(); ++b)
                if (!used[b] && merged[b].first == negate(merged[a].first) && merged[b].second == merged[a].second) {
                    used[b] = true;
                    w.support.push_back(merged[b].first);
                }
            w.incoming = is_incoming(D.B0, w);
            out.walls.push_back(std::move(w));
        }
        return out;
    }
    std::map<std::pair<std::vector<IntVec>, IntVec>, WallFunction> merged;
    for (const auto& w : D.walls) {
        auto key = std::make_pair(unique_primitive(w.support), w.f.n0);
        WallFunction t = truncate_function(w.f, ell);
        auto it = merged.find(key);
        if (it == merged.end())
            merged.emplace(key, t);
        else
            it->second = multiply(it->second, t, ell);
    }
    for (const auto& [key, f] : merged) {
        if (f.trivial()) continue;
        Wall w{key.first, f, false};
        w.incoming = is_incoming(D.B0, w);
        out.walls.push_back(std::move(w));
    }
    return out;
}

bool equivalent(const ScatteringDiagram& a, const ScatteringDiagram& b, long ell) {
    if (!(a.B0 == b.B0)) return false;
    ScatteringDiagram x = normalize(a, ell), y = normalize(b, ell);
    if (x.walls.size() != y.walls.size()) return false;
    for (std::size_t i = 0; i < x.walls.size(); ++i)
        if (x.walls[i].support != y.walls[i].support || !(x.walls[i].f == y.walls[i].f)) return false;
    return true;
}

std::vector<Int> factorize(const WallFunction& f, std::size_t terms) {
    USeries g = to_useries(f, terms);
    std::vector<Int> e;
    for (std::size_t j = 1; j <= terms; ++j) {
        Int ej = g[j];
        e.push_back(ej);
        if (sgn(ej) == 0) continue;
        USeries b(terms + 1);
        b[0] = 1;
        b[j] = 1;
        g = useries_mul(g, useries_pow(b, -ej.get_si(), terms), terms);
    }
    return e;
}

std::size_t max_power(const WallFunction& f, long ell) {
    long d = degree(f.n0);
    return d > 0 ? static_cast<std::size_t>(ell / d) : f.coeffs.size();
}

std::string diagram_str(const ScatteringDiagram& D) {
    std::ostringstream os;
    for (const auto& w : D.walls) {
        os << "cone(";
        for (std::size_t i = 0; i < w.support.size(); ++i) os << (i ? "," : "") << vec_str(w.support[i]);
        os << ") n0=" << vec_str(w.f.n0) << " f=" << w.f.str() << (w.incoming ? " incoming" : " outgoing") << "\n";
    }
    return os.str();
}

}  // namespace cs
