#pragma once

#include "clusterscat/matrix.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cs {

using Exp = std::vector<long>;

long total_degree(const Exp& e);
Exp to_exp(const IntVec& v);
IntVec to_intvec(const Exp& e);
Exp exp_add(const Exp& a, const Exp& b);
Exp exp_sub(const Exp& a, const Exp& b);

// Graded order: lower total degree first, ties by reverse lex so that y1 precedes y2.
// Translation invariant, hence a monomial order on Z^n.
struct GradedLex {
    bool operator()(const Exp& a, const Exp& b) const;
};

// Multivariate Laurent polynomial over Z; no zero coefficients are stored.
class Laurent {
public:
    using Terms = std::map<Exp, Int, GradedLex>;

    Laurent() = default;
    explicit Laurent(std::size_t nvars) : n_(nvars) {}
    static Laurent constant(std::size_t nvars, const Int& c);
    static Laurent monomial(const Exp& e, const Int& c = 1);
    static Laurent variable(std::size_t nvars, std::size_t i);

    std::size_t nvars() const { return n_; }
    const Terms& terms() const { return t_; }
    std::size_t size() const { return t_.size(); }
    bool is_zero() const { return t_.empty(); }
    bool is_constant(const Int& c) const;
    Int coeff(const Exp& e) const;
    Int constant_term() const { return coeff(Exp(n_, 0)); }

    void add_term(const Exp& e, const Int& c);

    Laurent operator-() const;
    Laurent& operator+=(const Laurent& o);
    Laurent& operator-=(const Laurent& o);
    Laurent& operator*=(const Laurent& o);
    bool operator==(const Laurent& o) const { return n_ == o.n_ && t_ == o.t_; }
    bool operator!=(const Laurent& o) const { return !(*this == o); }

    Laurent pow(unsigned long e) const;
    Laurent shifted(const Exp& e) const;  // multiply by x^e

    // x^e -> x^{M e}, result in M.rows() variables.
    Laurent monomial_substitute(const IntMatrix& m) const;
    // keep terms with total degree <= deg
    Laurent truncated(long deg) const;

    Exp min_exponents() const;  // entrywise
    Exp max_exponents() const;
    bool is_polynomial() const;  // all exponents >= 0
    bool nonnegative() const;    // all coefficients >= 0
    long max_total_degree() const;

    // Exact quotient in the Laurent ring, or nullopt if the division leaves a remainder.
    std::optional<Laurent> exact_div(const Laurent& d) const;

    std::string str(const std::string& var = "x") const;

private:
    std::size_t n_ = 0;
    Terms t_;
};

Laurent operator+(Laurent a, const Laurent& b);
Laurent operator-(Laurent a, const Laurent& b);
Laurent operator*(const Laurent& a, const Laurent& b);

// Product of x^{e}, exponent coordinates as IntVec.
Laurent mono(const IntVec& e, const Int& c = 1);

// Monomial x^e in exponent form, e.g. "y^(1,2)".
std::string exp_str(const std::string& var, const Exp& e);

}  // namespace cs
