#include "clusterscat/theta.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>

namespace cs {

namespace {

struct Ray {
    IntVec v;
    WallFunction f;
    IntVec np;  // minimal multiple of the normal
    long d;     // degree of the normal
};

Rat cross(const RatVec& a, const RatVec& b) { return a[0] * b[1] - a[1] * b[0]; }

RatVec to_rat(const IntVec& v) { return RatVec(v.begin(), v.end()); }

bool on_ray(const RatVec& P, const IntVec& v) {
    RatVec w = to_rat(v);
    return sign(cross(P, w)) == 0 && sign(P[0] * w[0] + P[1] * w[1]) > 0;
}

// integral vector pointing the same way as P
IntVec direction(const RatVec& P) {
    Int den = lcm(P[0].get_den(), P[1].get_den());
    return {Int(P[0] * den), Int(P[1] * den)};
}

struct Hit {
    Rat s;
    std::size_t wall;
    RatVec X;
};

struct Search {
    const ExchangeMatrix& B0;
    const std::vector<Ray>& rays;
    IntVec m0;
    RatVec Q;
    long ell;
    std::map<std::pair<std::size_t, long>, USeries> cache;
    std::vector<BrokenLine> out;

    IntVec exponent(const IntVec& a) const { return add(m0, B0.b() * a); }

    // walls met by P + s m, s > 0, in order of s; throws when the ray meets the origin
    std::vector<Hit> hits(const RatVec& P, const IntVec& m) const {
        RatVec mr = to_rat(m);
        if (sign(cross(P, mr)) == 0 && sign(P[0] * mr[0] + P[1] * mr[1]) < 0)
            throw NonGenericError("broken line through the origin at endpoint " + rat_str(Q));
        std::vector<Hit> h;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            RatVec v = to_rat(rays[i].v);
            Rat det = cross(mr, v);
            if (sign(det) == 0) {
                if (sign(cross(P, v)) == 0 && sign(P[0] * v[0] + P[1] * v[1]) >= 0)
                    throw NonGenericError("broken line runs along a wall at endpoint " + rat_str(Q));
                continue;
            }
            // P + s m = t v
            Rat s = cross(v, P) / det;
            Rat t = cross(mr, P) / det;
            if (sign(s) <= 0 || sign(t) <= 0) continue;
            h.push_back({s, i, {P[0] + s * mr[0], P[1] + s * mr[1]}});
        }
        std::stable_sort(h.begin(), h.end(), [](const Hit& a, const Hit& b) { return a.s < b.s; });
        return h;
    }

    const USeries& power(std::size_t wall, long e) {
        auto key = std::make_pair(wall, e);
        auto it = cache.find(key);
        if (it == cache.end()) {
            const Ray& r = rays[wall];
            std::size_t N = static_cast<std::size_t>(std::max(0L, ell / r.d));
            it = cache.emplace(key, useries_pow(to_useries(r.f, N), e, N)).first;
        }
        return it->second;
    }

    // rev holds the later segments, newest-last in reverse time; the current segment ends at P
    void back(const RatVec& P, const IntVec& a, std::vector<LineSegment>& rev) {
        IntVec m = exponent(a);
        if (is_zero(m)) return;
        std::vector<Hit> hs = hits(P, m);
        if (is_zero(a)) {
            BrokenLine line{m0, Q, {}};
            line.segments.push_back({Int(1), m, a, {}, {}, {}});
            for (auto it = rev.rbegin(); it != rev.rend(); ++it) line.segments.push_back(*it);
            for (std::size_t j = 1; j < line.segments.size(); ++j) line.segments[j].coeff *= line.segments[j - 1].coeff;
            out.push_back(std::move(line));
            return;
        }
        for (const Hit& h : hs) {
            const Ray& r = rays[h.wall];
            Rat pr = pairing(B0, r.np, m);
            if (pr.get_den() != 1) throw InvariantError("non-integral bend exponent");
            Int ea = abs(pr.get_num());
            long e = ea.get_si();
            if (e == 0) continue;
            const USeries& g = power(h.wall, e);
            IntVec b = a;
            for (std::size_t j = 1; j < g.size(); ++j) {
                b = sub(b, r.f.n0);
                if (std::any_of(b.begin(), b.end(), [](const Int& x) { return sgn(x) < 0; })) break;
                if (sgn(g[j]) == 0) continue;
                // the segment being opened carries the ratio; prefix products are formed on acceptance
                rev.push_back({g[j], m, a, h.X, r.v, r.f.n0});
                back(h.X, b, rev);
                rev.pop_back();
            }
        }
    }
};

std::vector<Ray> collect_rays(const ScatteringDiagram& D, long ell) {
    std::vector<Ray> rays;
    for (const auto& [v, f] : rays_of(normalize(D, ell))) {
        if (f.trivial()) continue;
        rays.push_back({v, f, minimal_multiple(D.B0, f.n0), degree(f.n0)});
    }
    return rays;
}

void require_rank2(const ScatteringDiagram& D) {
    if (D.B0.n() != 2) throw std::invalid_argument("broken lines are implemented in rank 2 only");
    require_nonsingular(D.B0);
}

}  // namespace

std::string BrokenLine::str() const {
    std::ostringstream os;
    os << "m0=" << vec_str(m0) << " Q=" << rat_str(Q);
    for (const auto& s : segments) {
        if (!s.start.empty()) os << " | bend at " << rat_str(s.start) << " on " << vec_str(s.wall_ray);
        os << " -> " << s.coeff.get_str() << " x^" << vec_str(s.m);
    }
    return os.str();
}

std::vector<BrokenLine> enumerate_broken_lines(const ScatteringDiagram& D, const IntVec& m0, const RatVec& Q, long ell) {
    require_rank2(D);
    if (m0.size() != 2 || Q.size() != 2) throw std::invalid_argument("m0 and Q must have two coordinates");
    if (is_zero(m0)) throw std::invalid_argument("broken lines need a nonzero initial exponent");
    if (sign(Q[0]) == 0 && sign(Q[1]) == 0) throw std::invalid_argument("endpoint at the origin");
    if (!check_consistency_rank2(D, ell)) throw std::invalid_argument("diagram is not consistent up to the truncation");
    std::vector<Ray> rays = collect_rays(D, ell);
    for (const auto& r : rays)
        if (on_ray(Q, r.v)) throw std::invalid_argument("endpoint " + rat_str(Q) + " lies on a wall");
    Search S{D.B0, rays, m0, Q, ell, {}, {}};
    std::vector<LineSegment> rev;
    for (long total = 0; total <= ell; ++total)
        for (long a0 = total; a0 >= 0; --a0) S.back(Q, IntVec{a0, total - a0}, rev);
    return std::move(S.out);
}

ThetaResult theta(const ScatteringDiagram& D, const IntVec& m0, const RatVec& Q, long ell) {
    require_rank2(D);
    ThetaResult res{TruncatedSeries::monomial(m0, ell), {}, Q, 0};
    if (is_zero(m0)) return res;
    res.series.body = Laurent(2);
    for (unsigned attempt = 0;; ++attempt) {
        RatVec P = Q;
        P[0] += Rat(attempt, 1009);
        P[1] += Rat(attempt, 2003);
        P[0].canonicalize();
        P[1].canonicalize();
        try {
            res.lines = enumerate_broken_lines(D, m0, P, ell);
            res.Q = P;
            res.perturbations = attempt;
            break;
        } catch (const NonGenericError&) {
            if (attempt == 3) throw;
        }
    }
    for (const auto& line : res.lines) res.series.body.add_term(to_exp(line.segments.back().yhat), line.coeff());
    return res;
}

bool check_broken_line(const ScatteringDiagram& D, const BrokenLine& line, long ell) {
    if (line.segments.empty()) return false;
    const auto& first = line.segments.front();
    if (first.coeff != 1 || first.m != line.m0 || !first.start.empty()) return false;
    for (const auto& s : line.segments)
        if (s.m != add(line.m0, D.B0.b() * s.yhat)) return false;
    std::vector<Ray> rays = collect_rays(D, ell);
    for (std::size_t j = 1; j < line.segments.size(); ++j) {
        const auto& prev = line.segments[j - 1];
        const auto& cur = line.segments[j];
        // the bend point lies on its wall and is reached from the previous bend with velocity -m_{j-1}
        if (!on_ray(cur.start, cur.wall_ray)) return false;
        if (j >= 2) {
            RatVec d{cur.start[0] - prev.start[0], cur.start[1] - prev.start[1]};
            RatVec v = to_rat(negate(prev.m));
            if (sign(cross(d, v)) != 0 || sign(d[0] * v[0] + d[1] * v[1]) <= 0) return false;
        }
        auto it = std::find_if(rays.begin(), rays.end(), [&](const Ray& r) { return r.v == cur.wall_ray; });
        if (it == rays.end() || it->f.n0 != cur.wall_normal) return false;
        // c_j x^{m_j} is a term of the crossing image of c_{j-1} x^{m_{j-1}}
        int eps = crossing_sign(D.B0, it->f.n0, negate(prev.m));
        TruncatedSeries img = wall_cross(D.B0, it->f, eps, TruncatedSeries::monomial(prev.m, ell));
        Exp step = to_exp(sub(cur.yhat, prev.yhat));
        if (prev.coeff * img.body.coeff(step) != cur.coeff || sgn(cur.coeff) == 0) return false;
    }
    const auto& last = line.segments.back();
    if (line.segments.size() >= 2) {
        RatVec d{line.Q[0] - last.start[0], line.Q[1] - last.start[1]};
        RatVec v = to_rat(negate(last.m));
        if (sign(cross(d, v)) != 0 || sign(d[0] * v[0] + d[1] * v[1]) <= 0) return false;
    }
    return true;
}

std::vector<Crossing> arc_path(const ScatteringDiagram& D, const RatVec& Q, const RatVec& Q2) {
    require_rank2(D);
    IntVec a = direction(Q), b = direction(Q2);
    if (is_zero(a) || is_zero(b)) throw std::invalid_argument("arc endpoint at the origin");
    int ab = angle_compare(a, b);
    std::vector<Crossing> before, after;  // rays past a, and rays reached after wrapping past the first axis
    for (const auto& [v, f] : rays_of(D)) {
        if (f.trivial()) continue;
        if (angle_compare(v, a) == 0 || angle_compare(v, b) == 0) throw std::invalid_argument("arc endpoint on a wall");
        Crossing c{f, crossing_sign(D.B0, f.n0, IntVec{-v[1], v[0]})};
        bool past_a = angle_compare(a, v) < 0, before_b = angle_compare(v, b) < 0;
        if (ab < 0 && past_a && before_b) before.push_back(c);
        if (ab > 0 && past_a) before.push_back(c);
        if (ab > 0 && before_b) after.push_back(c);
    }
    before.insert(before.end(), after.begin(), after.end());
    return before;
}

}  // namespace cs
