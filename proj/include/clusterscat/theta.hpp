#pragma once

#include "clusterscat/scattering.hpp"

#include <stdexcept>
#include <vector>

namespace cs {

// A bend point hit the origin or a segment ran along a wall.
struct NonGenericError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct LineSegment {
    Int coeff;
    IntVec m;          // attached exponent; the velocity is -m
    IntVec yhat;       // a with m = m0 + B0 a
    RatVec start;      // bend point opening the segment; empty for the unbounded first segment
    IntVec wall_ray;   // wall bent at (empty for the first segment)
    IntVec wall_normal;
};

struct BrokenLine {
    IntVec m0;
    RatVec Q;
    std::vector<LineSegment> segments;  // in time order

    const Int& coeff() const { return segments.back().coeff; }
    const IntVec& exponent() const { return segments.back().m; }
    std::size_t bends() const { return segments.size() - 1; }
    std::string str() const;
};

struct ThetaResult {
    TruncatedSeries series;
    std::vector<BrokenLine> lines;
    RatVec Q;               // endpoint actually used
    unsigned perturbations = 0;
};

// Rank 2 only. D must be consistent up to ell. Throws NonGenericError when Q is not generic.
std::vector<BrokenLine> enumerate_broken_lines(const ScatteringDiagram& D, const IntVec& m0, const RatVec& Q, long ell);
// Retries with a shifted endpoint (at most three times) when Q is not generic.
ThetaResult theta(const ScatteringDiagram& D, const IntVec& m0, const RatVec& Q, long ell);

// Re-derives every bend of the line from wall_cross; returns false on the first violation.
bool check_broken_line(const ScatteringDiagram& D, const BrokenLine& line, long ell);

// Crossings of the counterclockwise arc from Q to Q2 (neither on a wall).
std::vector<Crossing> arc_path(const ScatteringDiagram& D, const RatVec& Q, const RatVec& Q2);

}  // namespace cs
