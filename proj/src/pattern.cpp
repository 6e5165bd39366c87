#include "clusterscat/pattern.hpp"

#include <sstream>

namespace cs {

Walk::Walk(const std::vector<std::size_t>& dirs) {
    for (std::size_t k : dirs) {
        if (!d_.empty() && d_.back() == k) {
            d_.pop_back();
            cancelled_ = true;
        } else {
            d_.push_back(k);
        }
    }
}

Walk Walk::then(std::size_t k) const {
    Walk w(*this);
    w.cancelled_ = false;
    if (!w.d_.empty() && w.d_.back() == k)
        w.d_.pop_back();
    else
        w.d_.push_back(k);
    return w;
}

Walk Walk::prefix(std::size_t len) const {
    return Walk(std::vector<std::size_t>(d_.begin(), d_.begin() + static_cast<long>(len)));
}

Walk Walk::reversed() const { return Walk(std::vector<std::size_t>(d_.rbegin(), d_.rend())); }

int PatternPoint::eps(std::size_t i) const { return tropical_sign(*this, i); }

int tropical_sign(const PatternPoint& p, std::size_t i) {
    int s = 0;
    for (std::size_t r = 0; r < p.C.rows(); ++r) {
        int e = sgn(p.C(r, i));
        if (e == 0) continue;
        if (s != 0 && e != s) throw InvariantError("c-vector is not sign-coherent: column " + std::to_string(i));
        s = e;
    }
    if (s == 0) throw InvariantError("zero c-vector");
    return s;
}

PatternPoint initial_point(const ExchangeMatrix& B0, bool with_f) {
    std::size_t n = B0.n();
    PatternPoint p{B0, Walk(), B0, IntMatrix::identity(n), IntMatrix::identity(n), {}};
    if (with_f) p.F.assign(n, Laurent::constant(n, 1));
    return p;
}

Laurent f_exchange_numerator(const PatternPoint& p, std::size_t k) {
    std::size_t n = p.n();
    IntVec ck = p.c(k);
    IntVec plus(n), minus(n);
    for (std::size_t i = 0; i < n; ++i) {
        plus[i] = pos(ck[i]);
        minus[i] = pos(-ck[i]);
    }
    Laurent a = mono(plus), b = mono(minus);
    for (std::size_t j = 0; j < n; ++j) {
        const Int& bjk = p.Bt(j, k);
        if (sgn(bjk) > 0)
            a *= p.F[j].pow(bjk.get_ui());
        else if (sgn(bjk) < 0)
            b *= p.F[j].pow(Int(-bjk).get_ui());
    }
    return a + b;
}

PatternPoint mutate_point(const PatternPoint& p, std::size_t k, int eps) {
    std::size_t n = p.n();
    if (k >= n) throw std::out_of_range("direction out of range");
    const IntMatrix& B = p.Bt.b();
    const IntMatrix& B0 = p.B0.b();
    PatternPoint q{p.B0, p.walk.then(k), p.Bt.mutate(k, eps), IntMatrix(n, n), IntMatrix(n, n), {}};

    // C' = C J_k + C [eps B]_+^{k.} + [-eps C]_+^{.k} B
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (j == k)
                q.C(i, j) = -p.C(i, k);
            else
                q.C(i, j) = p.C(i, j) + p.C(i, k) * pos(eps * B(k, j)) + pos(-eps * p.C(i, k)) * B(k, j);
        }
    // G' = G J_k + G [-eps B]_+^{.k} - B0 [-eps C]_+^{.k}
    q.G = p.G;
    for (std::size_t i = 0; i < n; ++i) {
        Int v = -p.G(i, k);
        for (std::size_t l = 0; l < n; ++l) {
            v += p.G(i, l) * pos(-eps * B(l, k));
            v -= B0(i, l) * pos(-eps * p.C(l, k));
        }
        q.G(i, k) = v;
    }
    if (p.has_f()) {
        q.F = p.F;
        auto quo = f_exchange_numerator(p, k).exact_div(p.F[k]);
        if (!quo) throw InvariantError("F-polynomial division is not exact");
        q.F[k] = std::move(*quo);
    }
    return q;
}

PatternPoint evaluate_walk(const ExchangeMatrix& B0, const Walk& w, EvalOptions opt) {
    PatternPoint p = initial_point(B0, opt.with_f);
    for (std::size_t k : w.dirs()) {
        if (k >= B0.n()) throw std::out_of_range("walk direction out of range");
        p = mutate_point(p, k, opt.eps);
    }
    return p;
}

PatternPoint fast_mutate(const PatternPoint& p, std::size_t k) {
    std::size_t n = p.n();
    if (k >= n) throw std::out_of_range("direction out of range");
    int e = tropical_sign(p, k);
    const IntMatrix& B = p.Bt.b();
    IntMatrix Pc = jk(n, k) + row_mask(positive_part(Int(e) * B), k);
    IntMatrix Pg = jk(n, k) + col_mask(positive_part(Int(-e) * B), k);
    PatternPoint q{p.B0, p.walk.then(k), p.Bt.mutate(k), p.C * Pc, p.G * Pg, {}};
    if (p.has_f()) {
        q.F = p.F;
        auto quo = f_exchange_numerator(p, k).exact_div(p.F[k]);
        if (!quo) throw InvariantError("F-polynomial division is not exact");
        q.F[k] = std::move(*quo);
    }
    return q;
}

namespace {
int row_sign(const IntMatrix& G, std::size_t k) {
    int s = 0;
    for (std::size_t j = 0; j < G.cols(); ++j) {
        int e = sgn(G(k, j));
        if (e == 0) continue;
        if (s != 0 && e != s) throw InvariantError("g-matrix row is not sign-coherent: row " + std::to_string(k));
        s = e;
    }
    if (s == 0) throw InvariantError("zero row in G-matrix");
    return s;
}
}  // namespace

PatternPoint dual_mutate_initial(const PatternPoint& p, std::size_t k) {
    std::size_t n = p.n();
    if (k >= n) throw std::out_of_range("direction out of range");
    int e = row_sign(p.G, k);
    const IntMatrix& B0 = p.B0.b();
    IntMatrix Lc = jk(n, k) + row_mask(positive_part(Int(-e) * B0), k);
    IntMatrix Lg = jk(n, k) + col_mask(positive_part(Int(e) * B0), k);
    std::vector<std::size_t> dirs{k};
    dirs.insert(dirs.end(), p.walk.dirs().begin(), p.walk.dirs().end());
    ExchangeMatrix B1 = p.B0.mutate(k);
    PatternPoint q{B1, Walk(dirs), p.Bt, Lc * p.C, Lg * p.G, {}};
    if (p.has_f()) q.F = evaluate_walk(B1, q.walk).F;
    return q;
}

IntMatrix hat_c_matrix(const PatternPoint& p) {
    IntMatrix h = p.B0.b() * p.C;
    if (!(h == p.G * p.Bt.b())) throw InvariantError("B0 C != G B_t");
    return h;
}

ExchangeMatrix principal_extension(const ExchangeMatrix& B) {
    std::size_t n = B.n();
    IntMatrix e(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) e(i, j) = B(i, j);
        e(i, n + i) = -1;
        e(n + i, i) = 1;
    }
    SkewSymmetrizer s;
    s.d = B.skew().d;
    // b_{i,n+i}/d_i = -b_{n+i,i}/d_{n+i} forces d_{n+i} = d_i.
    s.d.insert(s.d.end(), B.skew().d.begin(), B.skew().d.end());
    return ExchangeMatrix(std::move(e), std::move(s));
}

IntMatrix transposed_pattern_g(const PatternPoint& p) {
    return evaluate_walk(p.Bt.transpose(), p.walk.reversed(), {false, 1}).G;
}

std::string PatternCache::key_of(const ExchangeMatrix& B0, const Walk& w, bool with_f) const {
    std::ostringstream os;
    os << B0.b().str() << '|' << with_f << '|';
    for (std::size_t k : w.dirs()) os << k << ',';
    return os.str();
}

std::shared_ptr<const PatternPoint> PatternCache::lookup(const std::string& key) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = index_.find(key);
    if (it == index_.end()) return nullptr;
    lru_.splice(lru_.begin(), lru_, it->second);
    return it->second->value;
}

void PatternCache::store(const std::string& key, std::shared_ptr<const PatternPoint> v) {
    std::lock_guard<std::mutex> lock(mu_);
    if (index_.count(key)) return;
    lru_.push_front({key, std::move(v)});
    index_[key] = lru_.begin();
    while (lru_.size() > cap_) {
        index_.erase(lru_.back().key);
        lru_.pop_back();
    }
}

std::shared_ptr<const PatternPoint> PatternCache::get(const ExchangeMatrix& B0, const Walk& w, bool with_f) {
    std::string key = key_of(B0, w, with_f);
    if (auto hit = lookup(key)) return hit;
    std::shared_ptr<const PatternPoint> v;
    if (w.empty()) {
        v = std::make_shared<const PatternPoint>(initial_point(B0, with_f));
    } else {
        auto parent = get(B0, w.prefix(w.size() - 1), with_f);
        v = std::make_shared<const PatternPoint>(mutate_point(*parent, w.dirs().back()));
    }
    store(key, v);
    return v;
}

std::size_t PatternCache::size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return lru_.size();
}

}  // namespace cs
