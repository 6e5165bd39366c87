#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cs {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

// Raised when an identity that must hold by theory fails: a bug, never user error.
struct InvariantError : std::logic_error {
    using std::logic_error::logic_error;
};

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);
    static IntMatrix identity(std::size_t n);
    static IntMatrix from_columns(const std::vector<IntVec>& cols);

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    bool square() const { return r_ == c_; }

    Int& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    IntVec column(std::size_t j) const;
    IntVec row(std::size_t i) const;
    void set_column(std::size_t j, const IntVec& v);

    IntMatrix transpose() const;
    IntMatrix operator-() const;
    IntMatrix& operator+=(const IntMatrix& o);
    IntMatrix& operator-=(const IntMatrix& o);

    bool operator==(const IntMatrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
    bool operator<(const IntMatrix& o) const;

    std::string str() const;  // [[a,b],[c,d]]

private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<Int> a_;
};

IntMatrix operator+(IntMatrix a, const IntMatrix& b);
IntMatrix operator-(IntMatrix a, const IntMatrix& b);
IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator*(const Int& s, IntMatrix a);
IntVec operator*(const IntMatrix& a, const IntVec& v);
RatVec operator*(const IntMatrix& a, const RatVec& v);

// [A]_+ entrywise, A^{.k} (column k only), A^{k.} (row k only), J_k.
IntMatrix positive_part(const IntMatrix& a);
IntMatrix col_mask(const IntMatrix& a, std::size_t k);
IntMatrix row_mask(const IntMatrix& a, std::size_t k);
IntMatrix jk(std::size_t n, std::size_t k);

enum class MaskMode { plus, colk, rowk, jk };
IntMatrix masked(const IntMatrix& a, MaskMode mode, std::size_t k = 0);

Int det(const IntMatrix& a);  // Bareiss, exact

// Exact inverse of a nonsingular square matrix, entries rational.
std::vector<RatVec> inverse(const IntMatrix& a);
// Solve a x = b exactly; nullopt if singular.
std::optional<RatVec> solve(const IntMatrix& a, const RatVec& b);

int sign(const Int& x);
int sign(const Rat& x);
Int pos(const Int& x);  // [x]_+

IntVec add(const IntVec& a, const IntVec& b);
IntVec sub(const IntVec& a, const IntVec& b);
IntVec scale(const Int& s, const IntVec& a);
IntVec negate(const IntVec& a);
bool is_zero(const IntVec& v);
Int vec_gcd(const IntVec& v);
IntVec primitive(const IntVec& v);  // divide by gcd; zero stays zero
IntVec unit(std::size_t n, std::size_t i);
std::string vec_str(const IntVec& v);  // (a,b,...)
std::string rat_str(const RatVec& v);

struct SkewSymmetrizer {
    std::vector<Int> d;  // positive, gcd 1; D = diag(1/d_i)
    Rat D(std::size_t i) const { return Rat(1, 1) / Rat(d[i]); }
};

// DB skew-symmetric: b_ij / d_i = -b_ji / d_j, d normalised to positive integers with gcd 1.
std::optional<SkewSymmetrizer> find_skew_symmetrizer(const IntMatrix& b);

class ExchangeMatrix {
public:
    ExchangeMatrix() = default;
    explicit ExchangeMatrix(IntMatrix b);  // throws std::invalid_argument if not skew-symmetrizable
    ExchangeMatrix(IntMatrix b, SkewSymmetrizer s);

    std::size_t n() const { return b_.rows(); }
    const IntMatrix& b() const { return b_; }
    const SkewSymmetrizer& skew() const { return s_; }
    const Int& d(std::size_t i) const { return s_.d[i]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return b_(i, j); }

    ExchangeMatrix mutate(std::size_t k, int eps = 1) const;
    ExchangeMatrix transpose() const;

    bool operator==(const ExchangeMatrix& o) const { return b_ == o.b_; }

private:
    IntMatrix b_;
    SkewSymmetrizer s_;
};

ExchangeMatrix mutate_exchange(const ExchangeMatrix& b, std::size_t k, int eps = 1);

// (u,v)_D = u^T D v with D = diag(1/d_i).
Rat inner_product_D(const SkewSymmetrizer& s, const IntVec& u, const IntVec& v);
Rat inner_product_D(const SkewSymmetrizer& s, const RatVec& u, const RatVec& v);

}  // namespace cs
