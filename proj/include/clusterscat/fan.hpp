#pragma once

#include "clusterscat/pattern.hpp"
#include "clusterscat/separation.hpp"

#include <vector>

namespace cs {

struct GFan {
    ExchangeMatrix B0;
    std::size_t depth = 0;
    std::vector<IntMatrix> cones;  // maximal cones as G-matrices, in BFS order
    std::vector<Walk> walks;       // a walk reaching each cone
    bool closed = false;           // one more step past depth finds no new cone
    bool complete = false;         // closed and every facet bounds exactly two cones

    std::vector<IntVec> rays() const;  // distinct g-vectors, sorted
};

// BFS over reduced walks of length <= depth, deduplicating cones by their column sets.
GFan build_g_fan(const ExchangeMatrix& B0, std::size_t depth);

// Every (n-1)-subset of columns of a cone is a facet of exactly two cones.
bool facets_paired(const std::vector<IntMatrix>& cones);

// Extreme rays (primitive, sorted) of sigma(G1) cap sigma(G2) for nonsingular G1, G2,
// by double description: start from the rays of sigma(G1) and add the rows of G2^{-1}.
std::vector<IntVec> intersect_simplicial(const IntMatrix& G1, const IntMatrix& G2);

bool rows_sign_coherent(const IntMatrix& G);

// For each pair of cones the intersection is the cone over the shared columns; every cone is
// unimodular and every row of every G is sign-coherent. Ranks above 4 are refused.
Report verify_fan(const GFan& f);

enum class PLVariant { phi, T, S, eta };
// phi = eta o T, from the fan at t0 to the fan at t1 = mu_k(t0); the inverse uses mu_k(B0).
RatVec pl_map(const ExchangeMatrix& B0, std::size_t k, PLVariant variant, const RatVec& v);
IntVec pl_map(const ExchangeMatrix& B0, std::size_t k, PLVariant variant, const IntVec& v);

Rat inner_product_D(const ExchangeMatrix& B, const IntVec& u, const IntVec& v);

// Coordinates of v in the basis G are >= 0 (and the i-th is 0 for the face sigma_i).
bool in_cone(const IntMatrix& G, const IntVec& v);
bool in_face(const IntMatrix& G, std::size_t i, const IntVec& v);

// True iff chat+_{i;t} lies in sigma_i(G_t), i.e. the cluster wall at (i;t) is incoming;
// then c+_{i;t} must be a unit vector, otherwise InvariantError.
bool outgoing_test(const PatternPoint& p, std::size_t i);

// Exact sign of a + b sqrt(D), D >= 0.
int surd_sign(const Rat& a, const Rat& b, const Int& D);

// Rank 2, B0 = [[0,-c],[b,0]], bc >= 5: g-vectors along mu_1 mu_2 ... (first) or mu_2 mu_1 ...,
// and the sign of cross(g, v) with the limit ray v = (bc - sqrt(bc(bc-4)), -2b)
// (or v' = (bc + sqrt(..), -2b) when primed).
std::vector<IntVec> rank2_g_sequence(const Int& b, const Int& c, std::size_t count, bool first);
int cross_sign_with_limit(const IntVec& g, const Int& b, const Int& c, bool primed);

}  // namespace cs
