#pragma once

#include "bellcomm/rational.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bellcomm {

enum class Rel { le, eq, ge };
enum class Sense { minimize, maximize };
enum class LpStatus { optimal, infeasible, unbounded };

/**
 * A linear program over exact rationals.
 *
 * Variables default to [0, +inf). Rows are sparse. The solver runs a
 * two-phase primal simplex with Bland's rule, so it terminates on every
 * input and is deterministic; all arithmetic is exact.
 */
struct LinearProgram {
    struct Row {
        std::vector<std::pair<int, Rat>> coeffs;
        Rel rel = Rel::eq;
        Rat rhs = 0;
    };
    struct VarBounds {
        std::optional<Rat> lower = Rat(0);
        std::optional<Rat> upper;  // nullopt = +inf
    };

    Sense sense = Sense::minimize;
    int num_vars = 0;
    std::vector<Rat> objective;  // dense, size num_vars (missing -> 0)
    std::vector<Row> rows;
    std::vector<VarBounds> bounds;  // empty -> all default

    int add_var(const Rat& obj = Rat(0), std::optional<Rat> lower = Rat(0),
                std::optional<Rat> upper = std::nullopt);
    void add_row(std::vector<std::pair<int, Rat>> coeffs, Rel rel, Rat rhs);
};

struct LpResult {
    LpStatus status = LpStatus::infeasible;
    Rat value;
    std::vector<Rat> solution;  // primal, size num_vars (optimal only)

    /// Infeasibility certificate over the original rows: y with
    ///   y_i >= 0 on >= rows, y_i <= 0 on <= rows, free on = rows,
    ///   sum_i y_i a_ij <= 0 for every variable with default bounds,
    ///   sum_i y_i b_i > 0.
    /// Populated only when every variable has default [0,inf) bounds.
    std::vector<Rat> farkas;
    Rat farkas_gap;  // y.b
};

LpResult solve(const LinearProgram& lp);

/// Exact check of an infeasibility certificate for an LP whose variables all
/// have default [0, inf) bounds.
bool verify_farkas(const LinearProgram& lp, const std::vector<Rat>& y);

/// Plain-text interchange form (objective, constraints, bounds), rationals
/// serialized as fractions; for cross-checking with external solvers.
std::string lp_to_text(const LinearProgram& lp);

}  // namespace bellcomm
