#pragma once

#include "clusterscat/laurent.hpp"
#include "clusterscat/matrix.hpp"

#include <cstddef>
#include <list>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

namespace cs {

// Path in the n-regular tree from the initial vertex; adjacent equal directions cancel.
class Walk {
public:
    Walk() = default;
    explicit Walk(const std::vector<std::size_t>& dirs);
    const std::vector<std::size_t>& dirs() const { return d_; }
    std::size_t size() const { return d_.size(); }
    bool empty() const { return d_.empty(); }
    bool reduced_on_construction() const { return cancelled_; }
    Walk then(std::size_t k) const;
    Walk prefix(std::size_t len) const;
    Walk reversed() const;
    bool operator==(const Walk& o) const { return d_ == o.d_; }

private:
    std::vector<std::size_t> d_;
    bool cancelled_ = false;
};

struct PatternPoint {
    ExchangeMatrix B0;
    Walk walk;
    ExchangeMatrix Bt;
    IntMatrix C, G;
    std::vector<Laurent> F;  // polynomials in y_1..y_n; empty when not tracked

    std::size_t n() const { return B0.n(); }
    bool has_f() const { return !F.empty(); }
    IntVec c(std::size_t i) const { return C.column(i); }
    IntVec g(std::size_t i) const { return G.column(i); }
    int eps(std::size_t i) const;  // tropical sign, asserts sign-coherence
};

PatternPoint initial_point(const ExchangeMatrix& B0, bool with_f = true);

// One step of the definitional rules: the eps-expressions for C and G and the
// exchange rule for F. Any eps gives the same result.
PatternPoint mutate_point(const PatternPoint& p, std::size_t k, int eps = 1);

struct EvalOptions {
    bool with_f = true;
    int eps = 1;
};
PatternPoint evaluate_walk(const ExchangeMatrix& B0, const Walk& w, EvalOptions opt = {});

int tropical_sign(const PatternPoint& p, std::size_t i);

// Signed single-product update C' = C(J_k+[e B]_+^{k.}), G' = G(J_k+[-e B]_+^{.k}), e = eps_k.
PatternPoint fast_mutate(const PatternPoint& p, std::size_t k);

// Same vertex t, re-expressed relative to the neighbour of the initial vertex in direction k.
PatternPoint dual_mutate_initial(const PatternPoint& p, std::size_t k);

// B0 C_t, checked against G_t B_t.
IntMatrix hat_c_matrix(const PatternPoint& p);

// [[B,-I],[I,0]]
ExchangeMatrix principal_extension(const ExchangeMatrix& B);

// G-matrix at the initial vertex t0 computed in the transposed pattern with initial vertex t.
IntMatrix transposed_pattern_g(const PatternPoint& p);

// The exchange polynomial of the F-update: y^{[c_k]+} prod F_j^{[b_jk]+} + y^{[-c_k]+} prod F_j^{[-b_jk]+}.
Laurent f_exchange_numerator(const PatternPoint& p, std::size_t k);

// Thread-safe LRU memo of evaluated walks.
class PatternCache {
public:
    explicit PatternCache(std::size_t capacity = 4096) : cap_(capacity) {}
    std::shared_ptr<const PatternPoint> get(const ExchangeMatrix& B0, const Walk& w, bool with_f = true);
    std::size_t size() const;

private:
    struct Entry {
        std::string key;
        std::shared_ptr<const PatternPoint> value;
    };
    std::string key_of(const ExchangeMatrix& B0, const Walk& w, bool with_f) const;
    std::shared_ptr<const PatternPoint> lookup(const std::string& key);
    void store(const std::string& key, std::shared_ptr<const PatternPoint> v);

    std::size_t cap_;
    mutable std::mutex mu_;
    std::list<Entry> lru_;
    std::unordered_map<std::string, std::list<Entry>::iterator> index_;
};

}  // namespace cs
