#pragma once

#include "clusterscat/laurent.hpp"
#include "clusterscat/pattern.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cs {

// num/den with positive-coefficient parts; compared by cross-multiplication.
struct SFRational {
    Laurent num, den;

    static SFRational of(const Laurent& p) { return {p, Laurent::constant(p.nvars(), 1)}; }
    bool subtraction_free() const { return num.nonnegative() && den.nonnegative(); }
    bool equals(const SFRational& o) const { return num * o.den == o.num * den; }
    bool equals(const Laurent& p) const { return num == p * den; }
    SFRational inverse() const { return {den, num}; }
    SFRational pow(long e) const;
    // strip the common monomial factor of num and den
    SFRational reduced() const;
    // exact division of one side by the other when possible; no general gcd
    SFRational cancelled() const;
    std::string str(const std::string& var) const;
};

SFRational operator*(const SFRational& a, const SFRational& b);
SFRational operator+(const SFRational& a, const SFRational& b);

enum class Alphabet { x, y };

// x_{i;t} = x^{g_i} F_i(yhat) with yhat_j = x^{b_j} (columns of B0).
Laurent x_variable(const PatternPoint& p, std::size_t i);
// y_{i;t} = y^{c_i} prod_j F_j(y)^{b_ji;t}
SFRational y_variable(const PatternPoint& p, std::size_t i);
// yhat_{i;t} = yhat^{c_i} prod_j F_j(yhat)^{b_ji;t}, as a rational function of x
SFRational yhat_variable(const PatternPoint& p, std::size_t i);
// y^a -> x^{B0 a}
Laurent substitute_yhat(const Laurent& f, const IntMatrix& B0);

// Exchange relation applied to a cluster of Laurent polynomials; the division must be exact.
std::vector<Laurent> mutate_x_direct(const std::vector<Laurent>& xs, const ExchangeMatrix& Bt, std::size_t k);
// y'_k = 1/y_k, y'_i = y_i y_k^{[b_ki]+} (1+y_k)^{-b_ki}
std::vector<SFRational> mutate_y_direct(const std::vector<SFRational>& ys, const ExchangeMatrix& Bt, std::size_t k);

// Exponent of the tropical monomial: min over numerator minus min over denominator.
IntVec tropicalize(const SFRational& r);
IntVec tropicalize(const Laurent& p);

// The automorphism q_{k;t} applied to an element; Alphabet::x uses
// x^m -> x^m (1+x^{chat+_k})^{-(m, d_k c_k)_D}, Alphabet::y uses y^n -> y^n (1+y^{c+_k})^{(n, d_k chat_k)_D}.
SFRational q_automorphism(const PatternPoint& p, std::size_t k, const SFRational& target, Alphabet a);
SFRational q_automorphism(const PatternPoint& p, std::size_t k, const Laurent& target, Alphabet a);
// q_t^{t0} = q_{k0;t0} o ... o q_{kr;tr}; the map of the last vertex acts first.
SFRational q_along_walk(const ExchangeMatrix& B0, const Walk& w, const SFRational& target, Alphabet a);

// Exponent matrices of the tropical part: column i is the exponent of tau_{k;t}(x_{i;t'}) in x_t
// (resp. tau_{k;t}(y_{i;t'}) in y_t).
IntMatrix tau_step(const PatternPoint& p, std::size_t k, Alphabet a);
// Composite tau_t^{t0} along the walk of p.
IntMatrix tau_along_walk(const ExchangeMatrix& B0, const Walk& w, Alphabet a);

// Ring map sending variable i to images[i]; monomials with negative exponents invert.
SFRational apply_map(const Laurent& f, const std::vector<SFRational>& images);
SFRational apply_map(const SFRational& f, const std::vector<SFRational>& images);

// Exact evaluation at a point with nonzero rational coordinates.
Rat evaluate(const Laurent& f, const RatVec& pt);
Rat evaluate(const SFRational& f, const RatVec& pt);
// q_{k;t} is the substitution x_i -> x_i (1+x^{chat+_k})^{-(e_i, d_k c_k)_D}
// (resp. y_i -> y_i (1+y^{c+_k})^{(e_i, d_k chat_k)_D}); q_{k;t}(f)(pt) = f(q_pullback(pt)).
RatVec q_pullback(const PatternPoint& p, std::size_t k, const RatVec& pt, Alphabet a);
// q_t^{t0}(f)(pt) = f(q_walk_pullback(pt))
RatVec q_walk_pullback(const ExchangeMatrix& B0, const Walk& w, const RatVec& pt, Alphabet a);
std::vector<Rat> mutate_y_values(const std::vector<Rat>& ys, const ExchangeMatrix& Bt, std::size_t k);

struct Report {
    std::size_t checks = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
    void expect(bool cond, const std::string& what) {
        ++checks;
        if (!cond) failures.push_back(what);
    }
    void merge(const Report& o) {
        checks += o.checks;
        failures.insert(failures.end(), o.failures.begin(), o.failures.end());
    }
};

struct FGOptions {
    // composite identities are checked symbolically only when the walk is at most this long;
    // beyond that they are checked by exact evaluation at random points
    std::size_t symbolic_depth = 3;
    std::size_t points = 4;
    std::uint64_t seed = 1;
};

Report fock_goncharov_check(const ExchangeMatrix& B0, const Walk& w, const FGOptions& opt = {});

// nu with A = nu B, i.e. column j of A is column nu^{-1}(j) of B; returned as inv[j] = nu^{-1}(j).
std::optional<std::vector<std::size_t>> column_permutation(const IntMatrix& A, const IntMatrix& B);
IntMatrix permute_columns(const IntMatrix& B, const std::vector<std::size_t>& inv);
std::vector<Laurent> permute_cluster(const std::vector<Laurent>& xs, const std::vector<std::size_t>& inv);

std::vector<Laurent> cluster(const PatternPoint& p);

}  // namespace cs
