#pragma once

#include "clusterscat/laurent.hpp"
#include "clusterscat/pattern.hpp"

#include <string>
#include <utility>
#include <vector>

namespace cs {

// f = 1 + sum_j c_j u^j with u = yhat^{n0}; coeffs[j-1] = c_j.
struct WallFunction {
    IntVec n0;
    std::vector<Int> coeffs;

    static WallFunction binomial(const IntVec& n0) { return {n0, {Int(1)}}; }
    bool trivial() const;
    void trim();  // drop trailing zero coefficients
    std::string str() const;
    bool operator==(const WallFunction& o) const { return n0 == o.n0 && coeffs == o.coeffs; }
};

// Support is the cone generated by `support`; a full hyperplane is given by +-generators.
struct Wall {
    std::vector<IntVec> support;
    WallFunction f;
    bool incoming = false;
};

struct ScatteringDiagram {
    ExchangeMatrix B0;
    long ell = 8;
    std::vector<Wall> walls;
};

// x^{base} times a series in yhat, truncated to yhat-degree <= ell.
struct TruncatedSeries {
    IntVec base;
    Laurent body;
    long ell = 8;

    static TruncatedSeries monomial(const IntVec& m, long ell);
    TruncatedSeries truncated(long deg) const;
    Laurent to_x(const ExchangeMatrix& B0) const;
    bool operator==(const TruncatedSeries& o) const { return base == o.base && body == o.body; }
    std::string str() const;
};

long degree(const IntVec& n);  // d(n) = sum n_i
IntVec p_star(const ExchangeMatrix& B0, const IntVec& n);
void require_nonsingular(const ExchangeMatrix& B0);
// <n, m> = sum n_i m_i / d_i
Rat pairing(const ExchangeMatrix& B0, const IntVec& n, const IntVec& m);
// least positive multiple n0' of n0 with <n0', m> integral for every integral m
IntVec minimal_multiple(const ExchangeMatrix& B0, const IntVec& n0);
// +1 iff <n0, velocity> < 0
int crossing_sign(const ExchangeMatrix& B0, const IntVec& n0, const IntVec& velocity);

// x^m -> x^m f^{eps <n0', m>}; negative powers expand as truncated series.
TruncatedSeries wall_cross(const ExchangeMatrix& B0, const WallFunction& f, int eps, const TruncatedSeries& s);

struct Crossing {
    WallFunction f;
    int eps;
};
// First crossing acts first.
TruncatedSeries path_ordered_product(const ExchangeMatrix& B0, const std::vector<Crossing>& path,
                                     const TruncatedSeries& s);
TruncatedSeries path_ordered_product(const ScatteringDiagram& D,
                                     const std::vector<std::pair<std::size_t, int>>& crossings,
                                     const TruncatedSeries& s);
// Crossings of a curve from the interior of sigma(G_t) back to the positive orthant along the walk:
// the composite of q_{k_j;t_j}, equal to p^{-eps} on each cluster wall.
std::vector<Crossing> cluster_path(const ExchangeMatrix& B0, const Walk& w);

bool is_incoming(const ExchangeMatrix& B0, const Wall& w);
bool cone_contains(const std::vector<IntVec>& gens, const IntVec& v);

ScatteringDiagram initial_diagram(const ExchangeMatrix& B0, long ell);
// Walls (sigma_i(G_t), 1 + yhat^{c+_{i;t}}) over reduced walks of length <= depth, duplicates removed.
ScatteringDiagram cluster_walls(const ExchangeMatrix& B0, std::size_t depth, long ell);

// Rank 2: ccw order of rays starting just past the positive first axis.
int angle_compare(const IntVec& a, const IntVec& b);
std::vector<std::pair<IntVec, WallFunction>> rays_of(const ScatteringDiagram& D);
// Image of x^m under the counterclockwise loop around the origin.
TruncatedSeries loop_product(const ScatteringDiagram& D, const IntVec& m, long ell);
ScatteringDiagram complete_rank2(const ExchangeMatrix& B0, long ell);
bool check_consistency_rank2(const ScatteringDiagram& D, long ell);

// T_k in the old coordinates, then the basis change to mu_k(B0).
ScatteringDiagram apply_T(const ScatteringDiagram& D, std::size_t k);
ScatteringDiagram rebase(const ScatteringDiagram& D, std::size_t k);
ScatteringDiagram mutate_diagram(const ScatteringDiagram& D, std::size_t k);
// Degree blow-up of the inverse coordinate change: walls of new degree <= l come from old degree <= L l.
long mutation_degree_factor(const ExchangeMatrix& B0, std::size_t k);

// Merge equal supports, drop trivial walls, join opposite rays with equal functions (rank 2), sort.
ScatteringDiagram normalize(const ScatteringDiagram& D);
ScatteringDiagram normalize(const ScatteringDiagram& D, long ell);
bool equivalent(const ScatteringDiagram& a, const ScatteringDiagram& b, long ell);

// Exponents e_j with f = prod_j (1 + u^j)^{e_j} up to the truncation.
std::vector<Int> factorize(const WallFunction& f, std::size_t terms);
std::size_t max_power(const WallFunction& f, long ell);

// Univariate truncated series with constant term 1: coefficients a[0..N].
using USeries = std::vector<Int>;
USeries useries_mul(const USeries& a, const USeries& b, std::size_t N);
USeries useries_pow(const USeries& a, long e, std::size_t N);
USeries to_useries(const WallFunction& f, std::size_t N);

std::string diagram_str(const ScatteringDiagram& D);

}  // namespace cs
