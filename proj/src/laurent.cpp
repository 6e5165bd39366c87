#include "clusterscat/laurent.hpp"

#include <algorithm>
#include <sstream>

namespace cs {

long total_degree(const Exp& e) {
    long s = 0;
    for (long x : e) s += x;
    return s;
}

Exp to_exp(const IntVec& v) {
    Exp e(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].fits_slong_p()) throw std::overflow_error("exponent exceeds machine range");
        e[i] = v[i].get_si();
    }
    return e;
}

IntVec to_intvec(const Exp& e) {
    IntVec v(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) v[i] = e[i];
    return v;
}

Exp exp_add(const Exp& a, const Exp& b) {
    Exp r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

Exp exp_sub(const Exp& a, const Exp& b) {
    Exp r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

bool GradedLex::operator()(const Exp& a, const Exp& b) const {
    long da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return b < a;
}

Laurent Laurent::constant(std::size_t nvars, const Int& c) {
    Laurent p(nvars);
    p.add_term(Exp(nvars, 0), c);
    return p;
}

Laurent Laurent::monomial(const Exp& e, const Int& c) {
    Laurent p(e.size());
    p.add_term(e, c);
    return p;
}

Laurent Laurent::variable(std::size_t nvars, std::size_t i) {
    Exp e(nvars, 0);
    e[i] = 1;
    return monomial(e);
}

bool Laurent::is_constant(const Int& c) const {
    if (sgn(c) == 0) return t_.empty();
    return t_.size() == 1 && total_degree(t_.begin()->first) == 0 &&
           std::all_of(t_.begin()->first.begin(), t_.begin()->first.end(), [](long x) { return x == 0; }) &&
           t_.begin()->second == c;
}

Int Laurent::coeff(const Exp& e) const {
    auto it = t_.find(e);
    return it == t_.end() ? Int(0) : it->second;
}

void Laurent::add_term(const Exp& e, const Int& c) {
    if (sgn(c) == 0) return;
    if (n_ == 0) n_ = e.size();
    auto [it, fresh] = t_.try_emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (sgn(it->second) == 0) t_.erase(it);
    }
}

Laurent Laurent::operator-() const {
    Laurent r(*this);
    for (auto& [e, c] : r.t_) c = -c;
    return r;
}

Laurent& Laurent::operator+=(const Laurent& o) {
    if (n_ == 0) n_ = o.n_;
    for (const auto& [e, c] : o.t_) add_term(e, c);
    return *this;
}

Laurent& Laurent::operator-=(const Laurent& o) {
    if (n_ == 0) n_ = o.n_;
    for (const auto& [e, c] : o.t_) add_term(e, -c);
    return *this;
}

Laurent& Laurent::operator*=(const Laurent& o) {
    *this = *this * o;
    return *this;
}

Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }

Laurent operator*(const Laurent& a, const Laurent& b) {
    Laurent r(std::max(a.nvars(), b.nvars()));
    Exp e;
    Int c;
    for (const auto& [ea, ca] : a.terms())
        for (const auto& [eb, cb] : b.terms()) {
            e = exp_add(ea, eb);
            c = ca * cb;
            r.add_term(e, c);
        }
    return r;
}

Laurent Laurent::pow(unsigned long e) const {
    Laurent r = constant(n_, 1), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

Laurent Laurent::shifted(const Exp& s) const {
    Laurent r(n_);
    for (const auto& [e, c] : t_) r.t_.emplace(exp_add(e, s), c);
    return r;
}

Laurent Laurent::monomial_substitute(const IntMatrix& m) const {
    Laurent r(m.rows());
    for (const auto& [e, c] : t_) {
        IntVec v = m * to_intvec(e);
        r.add_term(to_exp(v), c);
    }
    return r;
}

Laurent Laurent::truncated(long deg) const {
    Laurent r(n_);
    for (const auto& [e, c] : t_)
        if (total_degree(e) <= deg) r.t_.emplace(e, c);
    return r;
}

Exp Laurent::min_exponents() const {
    Exp m;
    for (const auto& [e, c] : t_) {
        if (m.empty()) m = e;
        for (std::size_t i = 0; i < e.size(); ++i) m[i] = std::min(m[i], e[i]);
    }
    if (m.empty()) m.assign(n_, 0);
    return m;
}

Exp Laurent::max_exponents() const {
    Exp m;
    for (const auto& [e, c] : t_) {
        if (m.empty()) m = e;
        for (std::size_t i = 0; i < e.size(); ++i) m[i] = std::max(m[i], e[i]);
    }
    if (m.empty()) m.assign(n_, 0);
    return m;
}

bool Laurent::is_polynomial() const {
    for (long x : min_exponents())
        if (x < 0) return false;
    return true;
}

bool Laurent::nonnegative() const {
    return std::all_of(t_.begin(), t_.end(), [](const auto& kv) { return sgn(kv.second) > 0; });
}

long Laurent::max_total_degree() const { return t_.empty() ? 0 : total_degree(t_.rbegin()->first); }

std::optional<Laurent> Laurent::exact_div(const Laurent& d) const {
    if (d.is_zero()) throw std::domain_error("division by zero polynomial");
    Laurent q(std::max(n_, d.n_));
    if (is_zero()) return q;
    // Newton polytope of the quotient is bounded by this box; leaving it means inexact.
    Exp lo = exp_sub(min_exponents(), d.min_exponents());
    Exp hi = exp_sub(max_exponents(), d.max_exponents());
    for (std::size_t i = 0; i < lo.size(); ++i)
        if (lo[i] > hi[i]) return std::nullopt;
    const auto& [dl, dc] = *d.t_.rbegin();
    Laurent r(*this);
    Int qc, rem;
    while (!r.is_zero()) {
        const auto& [rl, rc] = *r.t_.rbegin();
        Exp qe = exp_sub(rl, dl);
        for (std::size_t i = 0; i < qe.size(); ++i)
            if (qe[i] < lo[i] || qe[i] > hi[i]) return std::nullopt;
        mpz_tdiv_qr(qc.get_mpz_t(), rem.get_mpz_t(), rc.get_mpz_t(), dc.get_mpz_t());
        if (sgn(rem) != 0) return std::nullopt;
        Laurent t = monomial(qe, qc);
        q.add_term(qe, qc);
        r -= t * d;
    }
    return q;
}

std::string exp_str(const std::string& var, const Exp& e) {
    std::ostringstream os;
    os << var << "^(";
    for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
    os << ')';
    return os.str();
}

std::string Laurent::str(const std::string& var) const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : t_) {
        bool unit = std::all_of(e.begin(), e.end(), [](long x) { return x == 0; });
        Int a = abs(c);
        if (first)
            os << (sgn(c) < 0 ? "-" : "");
        else
            os << (sgn(c) < 0 ? " - " : " + ");
        first = false;
        if (unit) {
            os << a;
        } else {
            if (a != 1) os << a << '*';
            os << exp_str(var, e);
        }
    }
    return os.str();
}

Laurent mono(const IntVec& e, const Int& c) { return Laurent::monomial(to_exp(e), c); }

}  // namespace cs
