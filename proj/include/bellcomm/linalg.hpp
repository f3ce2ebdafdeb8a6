#pragma once

#include "bellcomm/rational.hpp"

#include <optional>
#include <vector>

namespace bellcomm {

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;

/// In-place reduced row echelon form. Returns the pivot column of each
/// reduced row (rank = pivots.size()); zero rows are moved to the bottom.
std::vector<int> rref(RatMat& m);

int rank(RatMat m);

/// Basis of the right nullspace of m (each vector has m's column count).
RatMat nullspace(const RatMat& m);

/// Solves the square system a*x = b exactly; nullopt when a is singular.
std::optional<RatVec> solve_square(RatMat a, RatVec b);

/// One solution of a*x = b (least-index parametrization, free vars at 0);
/// nullopt when inconsistent.
std::optional<RatVec> solve_any(const RatMat& a, const RatVec& b);

Rat dot(const RatVec& a, const RatVec& b);

/// Scales a vector by a positive rational so that all entries are integers
/// with gcd 1; direction is preserved. Canonical form for polytope rays.
void normalize_ray(RatVec& v);

}  // namespace bellcomm
