#include "clusterscat/separation.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <sstream>

namespace cs {

SFRational SFRational::pow(long e) const {
    if (e >= 0) return {num.pow(static_cast<unsigned long>(e)), den.pow(static_cast<unsigned long>(e))};
    return {den.pow(static_cast<unsigned long>(-e)), num.pow(static_cast<unsigned long>(-e))};
}

SFRational SFRational::reduced() const {
    Exp a = num.min_exponents(), b = den.min_exponents();
    Exp m(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) m[i] = -std::min(a[i], b[i]);
    return {num.shifted(m), den.shifted(m)};
}

SFRational SFRational::cancelled() const {
    SFRational r = reduced();
    std::size_t n = r.num.nvars();
    if (r.den.terms().size() <= r.num.terms().size()) {
        if (auto q = r.num.exact_div(r.den)) return {*q, Laurent::constant(n, 1)};
    } else if (auto q = r.den.exact_div(r.num)) {
        return {Laurent::constant(n, 1), *q};
    }
    return r;
}

std::string SFRational::str(const std::string& var) const {
    if (den.is_constant(1)) return num.str(var);
    return "(" + num.str(var) + ") / (" + den.str(var) + ")";
}

SFRational operator*(const SFRational& a, const SFRational& b) { return {a.num * b.num, a.den * b.den}; }

SFRational operator+(const SFRational& a, const SFRational& b) {
    if (a.den == b.den) return {a.num + b.num, a.den};
    return {a.num * b.den + b.num * a.den, a.den * b.den};
}

Laurent substitute_yhat(const Laurent& f, const IntMatrix& B0) { return f.monomial_substitute(B0); }

Laurent x_variable(const PatternPoint& p, std::size_t i) {
    if (!p.has_f()) throw std::invalid_argument("pattern point carries no F-polynomials");
    return mono(p.g(i)) * substitute_yhat(p.F[i], p.B0.b());
}

SFRational y_variable(const PatternPoint& p, std::size_t i) {
    if (!p.has_f()) throw std::invalid_argument("pattern point carries no F-polynomials");
    std::size_t n = p.n();
    IntVec c = p.c(i), up(n), down(n);
    for (std::size_t j = 0; j < n; ++j) {
        up[j] = pos(c[j]);
        down[j] = pos(-c[j]);
    }
    SFRational r{mono(up), mono(down)};
    for (std::size_t j = 0; j < n; ++j) {
        const Int& b = p.Bt(j, i);
        if (sign(b) > 0)
            r.num *= p.F[j].pow(b.get_ui());
        else if (sign(b) < 0)
            r.den *= p.F[j].pow(Int(-b).get_ui());
    }
    return r;
}

SFRational yhat_variable(const PatternPoint& p, std::size_t i) {
    SFRational y = y_variable(p, i);
    return {substitute_yhat(y.num, p.B0.b()), substitute_yhat(y.den, p.B0.b())};
}

std::vector<Laurent> mutate_x_direct(const std::vector<Laurent>& xs, const ExchangeMatrix& Bt, std::size_t k) {
    std::size_t n = Bt.n();
    if (k >= n) throw std::out_of_range("direction out of range");
    std::size_t nv = xs[0].nvars();
    Laurent a = Laurent::constant(nv, 1), b = Laurent::constant(nv, 1);
    for (std::size_t j = 0; j < n; ++j) {
        const Int& v = Bt(j, k);
        if (sign(v) > 0)
            a *= xs[j].pow(v.get_ui());
        else if (sign(v) < 0)
            b *= xs[j].pow(Int(-v).get_ui());
    }
    auto q = (a + b).exact_div(xs[k]);
    if (!q) throw InvariantError("exchange relation is not a Laurent polynomial");
    std::vector<Laurent> out(xs);
    out[k] = std::move(*q);
    return out;
}

std::vector<SFRational> mutate_y_direct(const std::vector<SFRational>& ys, const ExchangeMatrix& Bt, std::size_t k) {
    std::size_t n = Bt.n();
    if (k >= n) throw std::out_of_range("direction out of range");
    const SFRational& yk = ys[k];
    SFRational one_plus{yk.den + yk.num, yk.den};
    std::vector<SFRational> out(ys);
    out[k] = yk.inverse();
    for (std::size_t i = 0; i < n; ++i) {
        if (i == k) continue;
        const Int& b = Bt(k, i);
        long bl = b.get_si();
        SFRational r = ys[i];
        if (bl > 0) r = r * yk.pow(bl);
        r = r * one_plus.pow(-bl);
        out[i] = r.cancelled();
    }
    return out;
}

IntVec tropicalize(const SFRational& r) {
    SFRational s = r.reduced();
    return to_intvec(exp_sub(s.num.min_exponents(), s.den.min_exponents()));
}

IntVec tropicalize(const Laurent& p) { return to_intvec(p.min_exponents()); }

namespace {

// f(X) where every monomial x^m picks up (1+X)^{e(m)}: returns num/(1+X)^E form.
SFRational twist(const Laurent& f, const Laurent& one_plus, const std::function<long(const Exp&)>& ex) {
    long lo = 0;
    for (const auto& [m, c] : f.terms()) lo = std::min(lo, ex(m));
    long E = -lo;
    Laurent num(f.nvars());
    std::map<long, Laurent> powers;
    for (const auto& [m, c] : f.terms()) {
        long e = ex(m) + E;
        auto it = powers.find(e);
        if (it == powers.end()) it = powers.emplace(e, one_plus.pow(static_cast<unsigned long>(e))).first;
        num += Laurent::monomial(m, c) * it->second;
    }
    return {num, one_plus.pow(static_cast<unsigned long>(E))};
}

long pairing_to_long(const Rat& r) {
    if (r.get_den() != 1) throw InvariantError("non-integral exponent in q-automorphism");
    if (!r.get_num().fits_slong_p()) throw std::overflow_error("exponent too large");
    return r.get_num().get_si();
}

}  // namespace

namespace {

// q_{k;t} sends x^m to x^m (1+x^X)^{<w, m>} with integer weights w.
struct QData {
    IntVec X;
    std::vector<long> w;
};

QData q_data(const PatternPoint& p, std::size_t k, Alphabet a) {
    std::size_t n = p.n();
    int e = tropical_sign(p, k);
    IntVec ck = p.c(k);
    IntVec hk = (p.B0.b() * p.C).column(k);
    const auto& s = p.B0.skew();
    QData q;
    q.X = scale(e, a == Alphabet::x ? hk : ck);
    IntVec dk = scale(p.B0.d(k), a == Alphabet::x ? ck : hk);
    int sg = a == Alphabet::x ? -1 : 1;
    for (std::size_t i = 0; i < n; ++i) q.w.push_back(sg * pairing_to_long(inner_product_D(s, unit(n, i), dk)));
    return q;
}

}  // namespace

SFRational q_automorphism(const PatternPoint& p, std::size_t k, const SFRational& target, Alphabet a) {
    std::size_t n = p.n();
    QData q = q_data(p, k, a);
    Laurent one_plus = Laurent::constant(n, 1) + mono(q.X);
    auto ex = [&q](const Exp& m) {
        long r = 0;
        for (std::size_t i = 0; i < m.size(); ++i) r += q.w[i] * m[i];
        return r;
    };
    SFRational top = twist(target.num, one_plus, ex);
    SFRational bot = twist(target.den, one_plus, ex);
    return SFRational{top.num * bot.den, bot.num * top.den}.cancelled();
}

RatVec q_pullback(const PatternPoint& p, std::size_t k, const RatVec& pt, Alphabet a) {
    QData q = q_data(p, k, a);
    Rat base = 1 + evaluate(mono(q.X), pt);
    RatVec out(pt);
    for (std::size_t i = 0; i < pt.size(); ++i) {
        long w = q.w[i];
        Rat f = 1;
        for (long j = 0; j < std::abs(w); ++j) f *= base;
        out[i] *= w >= 0 ? f : Rat(1 / f);
    }
    return out;
}

RatVec q_walk_pullback(const ExchangeMatrix& B0, const Walk& w, const RatVec& pt, Alphabet a) {
    PatternPoint p = initial_point(B0, false);
    RatVec r = pt;
    for (std::size_t k : w.dirs()) {
        r = q_pullback(p, k, r, a);
        p = mutate_point(p, k);
    }
    return r;
}

Rat evaluate(const Laurent& f, const RatVec& pt) {
    Rat acc = 0;
    for (const auto& [m, c] : f.terms()) {
        Rat t = c;
        for (std::size_t i = 0; i < m.size(); ++i) {
            Rat v = m[i] >= 0 ? pt[i] : Rat(1 / pt[i]);
            for (long j = 0; j < std::abs(m[i]); ++j) t *= v;
        }
        acc += t;
    }
    return acc;
}

Rat evaluate(const SFRational& f, const RatVec& pt) { return evaluate(f.num, pt) / evaluate(f.den, pt); }

std::vector<Rat> mutate_y_values(const std::vector<Rat>& ys, const ExchangeMatrix& Bt, std::size_t k) {
    std::vector<Rat> out(ys);
    out[k] = 1 / ys[k];
    Rat base = 1 + ys[k];
    for (std::size_t i = 0; i < ys.size(); ++i) {
        if (i == k) continue;
        long b = Bt(k, i).get_si();
        for (long j = 0; j < b; ++j) out[i] *= ys[k] / base;
        for (long j = 0; j < -b; ++j) out[i] *= base;
    }
    return out;
}

SFRational q_automorphism(const PatternPoint& p, std::size_t k, const Laurent& target, Alphabet a) {
    return q_automorphism(p, k, SFRational::of(target), a);
}

SFRational q_along_walk(const ExchangeMatrix& B0, const Walk& w, const SFRational& target, Alphabet a) {
    std::vector<PatternPoint> pts{initial_point(B0, false)};
    for (std::size_t j = 0; j + 1 < w.size(); ++j) pts.push_back(mutate_point(pts.back(), w.dirs()[j]));
    SFRational r = target;
    for (std::size_t j = w.size(); j-- > 0;) r = q_automorphism(pts[j], w.dirs()[j], r, a);
    return r;
}

IntMatrix tau_step(const PatternPoint& p, std::size_t k, Alphabet a) {
    std::size_t n = p.n();
    int e = tropical_sign(p, k);
    IntMatrix m = IntMatrix::identity(n);
    if (a == Alphabet::x) {
        // tau(x'_k) = x_k^{-1} prod_j x_j^{[-e b_jk]+}
        for (std::size_t j = 0; j < n; ++j) m(j, k) = pos(-e * p.Bt(j, k));
        m(k, k) = -1;
    } else {
        // tau(y'_k) = y_k^{-1}, tau(y'_i) = y_i y_k^{[e b_ki]+}
        for (std::size_t i = 0; i < n; ++i) m(k, i) = pos(e * p.Bt(k, i));
        m(k, k) = -1;
    }
    return m;
}

IntMatrix tau_along_walk(const ExchangeMatrix& B0, const Walk& w, Alphabet a) {
    PatternPoint p = initial_point(B0, false);
    IntMatrix m = IntMatrix::identity(B0.n());
    for (std::size_t k : w.dirs()) {
        m = m * tau_step(p, k, a);
        p = mutate_point(p, k);
    }
    return m;
}

SFRational apply_map(const Laurent& f, const std::vector<SFRational>& images) {
    std::size_t nv = images.empty() ? f.nvars() : images[0].num.nvars();
    SFRational acc{Laurent(nv), Laurent::constant(nv, 1)};
    for (const auto& [m, c] : f.terms()) {
        SFRational t{Laurent::constant(nv, c), Laurent::constant(nv, 1)};
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i] != 0) t = t * images[i].pow(m[i]);
        acc = acc + t;
    }
    return acc;
}

SFRational apply_map(const SFRational& f, const std::vector<SFRational>& images) {
    SFRational a = apply_map(f.num, images), b = apply_map(f.den, images);
    return {a.num * b.den, b.num * a.den};
}

std::vector<Laurent> cluster(const PatternPoint& p) {
    std::vector<Laurent> xs;
    for (std::size_t i = 0; i < p.n(); ++i) xs.push_back(x_variable(p, i));
    return xs;
}

Report fock_goncharov_check(const ExchangeMatrix& B0, const Walk& w, const FGOptions& opt) {
    Report rep;
    std::size_t n = B0.n();
    std::vector<PatternPoint> pts{initial_point(B0)};
    for (std::size_t k : w.dirs()) pts.push_back(mutate_point(pts.back(), k));
    const PatternPoint& end = pts.back();

    IntMatrix tx = tau_along_walk(B0, w, Alphabet::x), ty = tau_along_walk(B0, w, Alphabet::y);
    rep.expect(tx == end.G, "tau(x_t) != x^{g}");
    rep.expect(ty == end.C, "tau(y_t) != y^{c}");

    std::vector<SFRational> xvars, yvars;
    for (std::size_t i = 0; i < n; ++i) {
        xvars.push_back(SFRational::of(Laurent::variable(n, i)));
        yvars.push_back(SFRational::of(Laurent::variable(n, i)));
    }

    for (std::size_t s = 0; s < w.size(); ++s) {
        const PatternPoint& p = pts[s];
        const PatternPoint& q = pts[s + 1];
        std::size_t k = w.dirs()[s];
        std::string at = " at step " + std::to_string(s);
        for (Alphabet a : {Alphabet::x, Alphabet::y})
            rep.expect(tau_step(p, k, a) * tau_step(q, k, a) == IntMatrix::identity(n), "tau involution fails" + at);

        // mu_{k;t} = rho_{k;t} o tau_{k;t} on formal variables of the seed at t
        int e = tropical_sign(p, k);
        IntMatrix tx1 = tau_step(p, k, Alphabet::x), ty1 = tau_step(p, k, Alphabet::y);
        IntVec bk = p.Bt.b().column(k);
        SFRational yh = SFRational::of(mono(bk));  // yhat_{k;t} in x_t
        SFRational yhe = e > 0 ? yh : yh.inverse();
        std::vector<SFRational> rho_x(xvars);
        SFRational one_plus_x{yhe.den + yhe.num, yhe.den};
        rho_x[k] = xvars[k] * one_plus_x.inverse();
        std::vector<SFRational> rho_y;
        SFRational yk = e > 0 ? yvars[k] : yvars[k].inverse();
        SFRational one_plus_y{yk.den + yk.num, yk.den};
        for (std::size_t i = 0; i < n; ++i) rho_y.push_back(yvars[i] * one_plus_y.pow(-p.Bt(k, i).get_si()));

        std::vector<Laurent> formal;
        for (std::size_t i = 0; i < n; ++i) formal.push_back(Laurent::variable(n, i));
        auto direct_x = mutate_x_direct(formal, p.Bt, k);
        auto direct_y = mutate_y_direct(yvars, p.Bt, k);
        for (std::size_t i = 0; i < n; ++i) {
            SFRational viaxt = apply_map(mono(tx1.column(i)), rho_x);
            rep.expect(viaxt.equals(direct_x[i]), "x-decomposition fails" + at);
            SFRational viayt = apply_map(mono(ty1.column(i)), rho_y);
            rep.expect(viayt.equals(direct_y[i]), "y-decomposition fails" + at);
        }

        // q_{k;t'} o q_{k;t} = id
        for (std::size_t i = 0; i < n; ++i) {
            SFRational gx = SFRational::of(Laurent::variable(n, i));
            rep.expect(q_automorphism(q, k, q_automorphism(p, k, gx, Alphabet::x), Alphabet::x).equals(gx),
                       "q involution fails on x" + at);
            rep.expect(q_automorphism(q, k, q_automorphism(p, k, gx, Alphabet::y), Alphabet::y).equals(gx),
                       "q involution fails on y" + at);
        }
    }

    // tau_t^{t0} o rho_{k;t} = q_{k;t} o tau_t^{t0} on the generators at t
    std::vector<SFRational> tau_x, tau_y;
    for (std::size_t j = 0; j < n; ++j) {
        tau_x.push_back(SFRational::of(mono(end.g(j))));
        tau_y.push_back(SFRational::of(mono(end.c(j))));
    }
    for (std::size_t k = 0; k < n; ++k) {
        int e = tropical_sign(end, k);
        SFRational yh = SFRational::of(mono(end.Bt.b().column(k)));
        SFRational yhe = e > 0 ? yh : yh.inverse();
        SFRational yk = e > 0 ? yvars[k] : yvars[k].inverse();
        for (std::size_t i = 0; i < n; ++i) {
            SFRational rx = i == k ? xvars[i] * SFRational{yhe.den, yhe.den + yhe.num} : xvars[i];
            SFRational lhs = apply_map(rx, tau_x);
            rep.expect(lhs.equals(q_automorphism(end, k, tau_x[i], Alphabet::x)), "tau-rho intertwining fails on x");
            SFRational ry = yvars[i] * SFRational{yk.den + yk.num, yk.den}.pow(-end.Bt(k, i).get_si());
            SFRational lhy = apply_map(ry, tau_y);
            rep.expect(lhy.equals(q_automorphism(end, k, tau_y[i], Alphabet::y)), "tau-rho intertwining fails on y");
        }
    }

    // mu_t^{t0} = q_t^{t0} o tau_t^{t0}: separation formulas and the direct-mutation oracle
    std::vector<Laurent> xs;
    for (std::size_t i = 0; i < n; ++i) xs.push_back(Laurent::variable(n, i));
    for (std::size_t s = 0; s < w.size(); ++s) xs = mutate_x_direct(xs, pts[s].Bt, w.dirs()[s]);
    for (std::size_t i = 0; i < n; ++i) rep.expect(x_variable(end, i) == xs[i], "separation formula for x fails");

    if (w.size() <= opt.symbolic_depth) {
        std::vector<SFRational> ys(yvars);
        for (std::size_t s = 0; s < w.size(); ++s) ys = mutate_y_direct(ys, pts[s].Bt, w.dirs()[s]);
        for (std::size_t i = 0; i < n; ++i) {
            rep.expect(q_along_walk(B0, w, tau_x[i], Alphabet::x).equals(xs[i]),
                       "q o tau != mu on x_" + std::to_string(i + 1));
            rep.expect(q_along_walk(B0, w, tau_y[i], Alphabet::y).equals(ys[i]),
                       "q o tau != mu on y_" + std::to_string(i + 1));
            rep.expect(y_variable(end, i).equals(ys[i]), "separation formula for y fails");
        }
    }
    std::mt19937_64 g(opt.seed);
    std::uniform_int_distribution<long> coord(1, 12);
    for (std::size_t r = 0; r < opt.points; ++r) {
        RatVec pt(n);
        for (auto& v : pt) {
            v = Rat(coord(g), coord(g));
            v.canonicalize();
        }
        RatVec px = q_walk_pullback(B0, w, pt, Alphabet::x), py = q_walk_pullback(B0, w, pt, Alphabet::y);
        std::vector<Rat> ys(pt.begin(), pt.end());
        for (std::size_t s = 0; s < w.size(); ++s) ys = mutate_y_values(ys, pts[s].Bt, w.dirs()[s]);
        for (std::size_t i = 0; i < n; ++i) {
            rep.expect(evaluate(tau_x[i].num, px) == evaluate(xs[i], pt),
                       "q o tau != mu on x_" + std::to_string(i + 1) + " at a point");
            rep.expect(evaluate(tau_y[i].num, py) == ys[i],
                       "q o tau != mu on y_" + std::to_string(i + 1) + " at a point");
            rep.expect(evaluate(y_variable(end, i), pt) == ys[i], "separation formula for y fails at a point");
        }
    }
    return rep;
}

std::optional<std::vector<std::size_t>> column_permutation(const IntMatrix& A, const IntMatrix& B) {
    std::size_t n = A.cols();
    std::vector<std::size_t> inv(n);
    std::vector<bool> used(n, false);
    for (std::size_t j = 0; j < n; ++j) {
        IntVec a = A.column(j);
        bool found = false;
        for (std::size_t l = 0; l < n && !found; ++l)
            if (!used[l] && B.column(l) == a) {
                inv[j] = l;
                used[l] = true;
                found = true;
            }
        if (!found) return std::nullopt;
    }
    return inv;
}

IntMatrix permute_columns(const IntMatrix& B, const std::vector<std::size_t>& inv) {
    IntMatrix A(B.rows(), B.cols());
    for (std::size_t j = 0; j < inv.size(); ++j) A.set_column(j, B.column(inv[j]));
    return A;
}

std::vector<Laurent> permute_cluster(const std::vector<Laurent>& xs, const std::vector<std::size_t>& inv) {
    std::vector<Laurent> out;
    for (std::size_t j = 0; j < inv.size(); ++j) out.push_back(xs[inv[j]]);
    return out;
}

}  // namespace cs
