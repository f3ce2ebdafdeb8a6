#pragma once

#include "bellcomm/lp.hpp"
#include "bellcomm/models.hpp"

namespace bellcomm {

/**
 * Outcome of the decomposition test p = T q, q >= 0, sum q = 1.
 *
 * On membership, `weights` holds q over the (deduplicated) matrix columns.
 * On non-membership, `functional`/`bound` form a separating inequality over
 * behavior coordinates: functional.t <= bound for every strategy column t,
 * while functional.p = `value` > bound. Both sides are verified exactly
 * before the result is returned.
 */
struct MembershipResult {
    bool member = false;
    std::vector<Rat> weights;
    std::vector<Rat> functional;
    Rat bound;
    Rat value;
};

MembershipResult membership(const Behavior& b, const ModelSpec& m, const Budget& budget = {});

/// Same test against a prebuilt matrix (for sweeps sharing one model).
MembershipResult membership(const Behavior& b, const StrategyMatrix& t);

}  // namespace bellcomm
