#include "clusterscat/matrix.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>

namespace cs {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    r_ = rows.size();
    c_ = r_ ? rows.begin()->size() : 0;
    a_.reserve(r_ * c_);
    for (const auto& row : rows) {
        if (row.size() != c_) throw std::invalid_argument("ragged matrix literal");
        for (long x : row) a_.emplace_back(x);
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVec>& cols) {
    std::size_t n = cols.empty() ? 0 : cols[0].size();
    IntMatrix m(n, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) m.set_column(j, cols[j]);
    return m;
}

IntVec IntMatrix::column(std::size_t j) const {
    IntVec v(r_);
    for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
}

IntVec IntMatrix::row(std::size_t i) const {
    return IntVec(a_.begin() + i * c_, a_.begin() + (i + 1) * c_);
}

void IntMatrix::set_column(std::size_t j, const IntVec& v) {
    for (std::size_t i = 0; i < r_; ++i) (*this)(i, j) = v[i];
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

IntMatrix IntMatrix::operator-() const {
    IntMatrix t(*this);
    for (auto& x : t.a_) x = -x;
    return t;
}

IntMatrix& IntMatrix::operator+=(const IntMatrix& o) {
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

IntMatrix& IntMatrix::operator-=(const IntMatrix& o) {
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

bool IntMatrix::operator<(const IntMatrix& o) const {
    if (r_ != o.r_) return r_ < o.r_;
    if (c_ != o.c_) return c_ < o.c_;
    return std::lexicographical_compare(a_.begin(), a_.end(), o.a_.begin(), o.a_.end());
}

std::string IntMatrix::str() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < r_; ++i) {
        os << (i ? ",[" : "[");
        for (std::size_t j = 0; j < c_; ++j) os << (j ? "," : "") << (*this)(i, j);
        os << ']';
    }
    os << ']';
    return os.str();
}

IntMatrix operator+(IntMatrix a, const IntMatrix& b) { return a += b; }
IntMatrix operator-(IntMatrix a, const IntMatrix& b) { return a -= b; }

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch");
    IntMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t l = 0; l < a.cols(); ++l) {
            if (sgn(a(i, l)) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, l) * b(l, j);
        }
    return c;
}

IntMatrix operator*(const Int& s, IntMatrix a) {
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) *= s;
    return a;
}

IntVec operator*(const IntMatrix& a, const IntVec& v) {
    IntVec r(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r[i] += a(i, j) * v[j];
    return r;
}

RatVec operator*(const IntMatrix& a, const RatVec& v) {
    RatVec r(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r[i] += Rat(a(i, j)) * v[j];
    return r;
}

IntMatrix positive_part(const IntMatrix& a) {
    IntMatrix r(a);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (sgn(r(i, j)) < 0) r(i, j) = 0;
    return r;
}

IntMatrix col_mask(const IntMatrix& a, std::size_t k) {
    IntMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) r(i, k) = a(i, k);
    return r;
}

IntMatrix row_mask(const IntMatrix& a, std::size_t k) {
    IntMatrix r(a.rows(), a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) r(k, j) = a(k, j);
    return r;
}

IntMatrix jk(std::size_t n, std::size_t k) {
    IntMatrix r = IntMatrix::identity(n);
    r(k, k) = -1;
    return r;
}

IntMatrix masked(const IntMatrix& a, MaskMode mode, std::size_t k) {
    if (mode != MaskMode::plus && k >= a.rows()) throw std::out_of_range("direction out of range");
    switch (mode) {
        case MaskMode::plus: return positive_part(a);
        case MaskMode::colk: return col_mask(a, k);
        case MaskMode::rowk: return row_mask(a, k);
        case MaskMode::jk: return jk(a.rows(), k);
    }
    return a;
}

Int det(const IntMatrix& m) {
    if (!m.square()) throw std::invalid_argument("det of non-square matrix");
    std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a(m);
    Int prev = 1;
    int s = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (sgn(a(k, k)) == 0) {
            std::size_t p = k + 1;
            while (p < n && sgn(a(p, k)) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
            s = -s;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                a(i, j) = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = a(k, k);
    }
    return s * a(n - 1, n - 1);
}

namespace {
// Gauss-Jordan on [A | rhs] over Q; returns false when singular.
bool gauss_jordan(std::vector<RatVec>& a, std::vector<RatVec>& rhs) {
    std::size_t n = a.size();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && sgn(a[p][k]) == 0) ++p;
        if (p == n) return false;
        std::swap(a[k], a[p]);
        std::swap(rhs[k], rhs[p]);
        Rat inv = 1 / a[k][k];
        for (auto& x : a[k]) x *= inv;
        for (auto& x : rhs[k]) x *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || sgn(a[i][k]) == 0) continue;
            Rat f = a[i][k];
            for (std::size_t j = 0; j < n; ++j) a[i][j] -= f * a[k][j];
            for (std::size_t j = 0; j < rhs[i].size(); ++j) rhs[i][j] -= f * rhs[k][j];
        }
    }
    return true;
}

std::vector<RatVec> to_rat(const IntMatrix& m) {
    std::vector<RatVec> a(m.rows(), RatVec(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m(i, j);
    return a;
}
}  // namespace

std::vector<RatVec> inverse(const IntMatrix& m) {
    if (!m.square()) throw std::invalid_argument("inverse of non-square matrix");
    std::size_t n = m.rows();
    auto a = to_rat(m);
    std::vector<RatVec> rhs(n, RatVec(n));
    for (std::size_t i = 0; i < n; ++i) rhs[i][i] = 1;
    if (!gauss_jordan(a, rhs)) throw std::domain_error("singular matrix");
    return rhs;
}

std::optional<RatVec> solve(const IntMatrix& m, const RatVec& b) {
    std::size_t n = m.rows();
    auto a = to_rat(m);
    std::vector<RatVec> rhs(n, RatVec(1));
    for (std::size_t i = 0; i < n; ++i) rhs[i][0] = b[i];
    if (!gauss_jordan(a, rhs)) return std::nullopt;
    RatVec x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = rhs[i][0];
    return x;
}

int sign(const Int& x) { return sgn(x); }
int sign(const Rat& x) { return sgn(x); }
Int pos(const Int& x) { return sgn(x) > 0 ? x : Int(0); }

IntVec add(const IntVec& a, const IntVec& b) {
    IntVec r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

IntVec sub(const IntVec& a, const IntVec& b) {
    IntVec r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

IntVec scale(const Int& s, const IntVec& a) {
    IntVec r(a);
    for (auto& x : r) x *= s;
    return r;
}

IntVec negate(const IntVec& a) { return scale(-1, a); }

bool is_zero(const IntVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Int& x) { return sgn(x) == 0; });
}

Int vec_gcd(const IntVec& v) {
    Int g = 0;
    for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    return g;
}

IntVec primitive(const IntVec& v) {
    Int g = vec_gcd(v);
    if (sgn(g) == 0) return v;
    IntVec r(v);
    for (auto& x : r) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    return r;
}

IntVec unit(std::size_t n, std::size_t i) {
    IntVec v(n);
    v[i] = 1;
    return v;
}

std::string vec_str(const IntVec& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ')';
    return os.str();
}

std::string rat_str(const RatVec& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ')';
    return os.str();
}

std::optional<SkewSymmetrizer> find_skew_symmetrizer(const IntMatrix& b) {
    if (!b.square()) return std::nullopt;
    std::size_t n = b.rows();
    for (std::size_t i = 0; i < n; ++i)
        if (sgn(b(i, i)) != 0) return std::nullopt;
    // sign pattern must already be skew
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (sgn(b(i, j)) != -sgn(b(j, i))) return std::nullopt;

    std::vector<Rat> d(n, Rat(0));
    std::vector<std::size_t> comp(n, n);
    for (std::size_t root = 0; root < n; ++root) {
        if (comp[root] != n) continue;
        d[root] = 1;
        comp[root] = root;
        std::queue<std::size_t> q;
        q.push(root);
        while (!q.empty()) {
            std::size_t i = q.front();
            q.pop();
            for (std::size_t j = 0; j < n; ++j) {
                if (sgn(b(i, j)) == 0) continue;
                Rat dj = -d[i] * Rat(b(j, i)) / Rat(b(i, j));  // b_ij / d_i = -b_ji / d_j
                if (comp[j] == n) {
                    comp[j] = root;
                    d[j] = dj;
                    q.push(j);
                } else if (d[j] != dj) {
                    return std::nullopt;
                }
            }
        }
    }
    // per component: clear denominators, then divide by the gcd
    SkewSymmetrizer s;
    s.d.assign(n, 0);
    for (std::size_t root = 0; root < n; ++root) {
        if (comp[root] != root) continue;
        Int l = 1;
        for (std::size_t i = 0; i < n; ++i)
            if (comp[i] == root) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d[i].get_den_mpz_t());
        Int g = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (comp[i] == root) {
                Rat v = d[i] * Rat(l);
                s.d[i] = v.get_num();
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), s.d[i].get_mpz_t());
            }
        for (std::size_t i = 0; i < n; ++i)
            if (comp[i] == root) s.d[i] /= g;
    }
    for (const auto& x : s.d)
        if (sgn(x) <= 0) return std::nullopt;
    return s;
}

ExchangeMatrix::ExchangeMatrix(IntMatrix b) : b_(std::move(b)) {
    auto s = find_skew_symmetrizer(b_);
    if (!s) throw std::invalid_argument("matrix is not skew-symmetrizable: " + b_.str());
    s_ = *s;
}

ExchangeMatrix::ExchangeMatrix(IntMatrix b, SkewSymmetrizer s) : b_(std::move(b)), s_(std::move(s)) {}

ExchangeMatrix ExchangeMatrix::mutate(std::size_t k, int eps) const {
    std::size_t n = b_.rows();
    if (k >= n) throw std::out_of_range("direction out of range");
    if (eps != 1 && eps != -1) throw std::invalid_argument("eps must be +1 or -1");
    IntMatrix r(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == k || j == k)
                r(i, j) = -b_(i, j);
            else
                r(i, j) = b_(i, j) + b_(i, k) * pos(eps * b_(k, j)) + pos(-eps * b_(i, k)) * b_(k, j);
        }
    return ExchangeMatrix(std::move(r), s_);
}

ExchangeMatrix ExchangeMatrix::transpose() const { return ExchangeMatrix(b_.transpose()); }

ExchangeMatrix mutate_exchange(const ExchangeMatrix& b, std::size_t k, int eps) { return b.mutate(k, eps); }

Rat inner_product_D(const SkewSymmetrizer& s, const IntVec& u, const IntVec& v) {
    Rat r = 0;
    for (std::size_t i = 0; i < u.size(); ++i) r += Rat(u[i] * v[i]) / Rat(s.d[i]);
    r.canonicalize();
    return r;
}

Rat inner_product_D(const SkewSymmetrizer& s, const RatVec& u, const RatVec& v) {
    Rat r = 0;
    for (std::size_t i = 0; i < u.size(); ++i) r += u[i] * v[i] / Rat(s.d[i]);
    return r;
}

}  // namespace cs
