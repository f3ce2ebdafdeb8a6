#include "bellcomm/lp.hpp"

#include <algorithm>
#include <sstream>

namespace bellcomm {

int LinearProgram::add_var(const Rat& obj, std::optional<Rat> lower, std::optional<Rat> upper) {
    bounds.resize(static_cast<std::size_t>(num_vars), VarBounds{});
    objective.resize(static_cast<std::size_t>(num_vars), Rat(0));
    objective.push_back(obj);
    bounds.push_back({std::move(lower), std::move(upper)});
    return num_vars++;
}

void LinearProgram::add_row(std::vector<std::pair<int, Rat>> coeffs, Rel rel, Rat rhs) {
    rows.push_back({std::move(coeffs), rel, std::move(rhs)});
}

namespace {

// Dense two-phase tableau simplex. Columns: structural | artificial | rhs.
struct Tableau {
    std::size_t m, n;             // rows, structural columns
    std::vector<std::vector<Rat>> a;  // m rows, width n + m + 1
    std::vector<Rat> cost;        // width n + m + 1 (reduced-cost row, negated objective convention)
    std::vector<int> basis;       // per row: column index

    std::size_t rhs_col() const { return n + m; }

    void pivot(std::size_t r, std::size_t c) {
        std::vector<Rat>& prow = a[r];
        const Rat piv = prow[c];
        if (piv != 1)
            for (Rat& v : prow)
                if (v != 0) v /= piv;
        const std::size_t width = n + m + 1;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r) continue;
            const Rat f = a[i][c];
            if (f == 0) continue;
            std::vector<Rat>& row = a[i];
            for (std::size_t j = 0; j < width; ++j)
                if (prow[j] != 0) row[j] -= f * prow[j];
        }
        const Rat fc = cost[c];
        if (fc != 0)
            for (std::size_t j = 0; j < width; ++j)
                if (prow[j] != 0) cost[j] -= fc * prow[j];
        basis[r] = static_cast<int>(c);
    }

    // Bland's rule on columns [0, limit). Returns false at optimality.
    // Throws on unboundedness via the out flag.
    bool step(std::size_t limit, bool& unbounded) {
        std::size_t enter = limit;
        for (std::size_t j = 0; j < limit; ++j)
            if (cost[j] < 0) { enter = j; break; }
        if (enter == limit) return false;
        std::size_t leave = m;
        Rat best;
        int best_var = -1;
        for (std::size_t i = 0; i < m; ++i) {
            if (a[i][enter] <= 0) continue;
            Rat ratio = a[i][rhs_col()] / a[i][enter];
            if (leave == m || ratio < best || (ratio == best && basis[i] < best_var)) {
                leave = i;
                best = ratio;
                best_var = basis[i];
            }
        }
        if (leave == m) { unbounded = true; return false; }
        pivot(leave, enter);
        unbounded = false;
        return true;
    }
};

struct Transform {
    // Maps solver variables back to user variables: x_user = shift + x_pos - x_neg.
    struct VarMap {
        int pos = -1, neg = -1;
        Rat shift;
    };
    std::vector<VarMap> vars;
    std::vector<Rat> row_scale;  // +-1 per user row (b-sign normalization)
    std::size_t user_rows = 0;
};

}  // namespace

LpResult solve(const LinearProgram& lp) {
    if (lp.num_vars <= 0) throw std::invalid_argument("lp: needs at least one variable");
    for (const auto& row : lp.rows)
        for (const auto& [j, c] : row.coeffs)
            if (j < 0 || j >= lp.num_vars) throw std::invalid_argument("lp: coefficient index out of range");
    const std::size_t nu = static_cast<std::size_t>(lp.num_vars);
    std::vector<LinearProgram::VarBounds> bounds = lp.bounds;
    if (bounds.empty()) bounds.assign(nu, LinearProgram::VarBounds{});
    if (bounds.size() != nu) throw std::invalid_argument("lp: bounds size mismatch");
    std::vector<Rat> objective = lp.objective;
    objective.resize(nu, Rat(0));

    // Standard-form conversion: shift finite lower bounds, split free vars,
    // turn finite upper bounds into extra <= rows, add slack/surplus columns.
    Transform tf;
    tf.vars.resize(nu);
    int ncols = 0;
    std::vector<std::pair<int, Rat>> upper_rows;  // (user var, residual upper bound)
    for (std::size_t j = 0; j < nu; ++j) {
        auto& vm = tf.vars[j];
        if (bounds[j].lower.has_value()) {
            vm.shift = *bounds[j].lower;
            vm.pos = ncols++;
            if (bounds[j].upper.has_value()) {
                Rat residual = *bounds[j].upper - vm.shift;
                if (residual < 0) {
                    LpResult res;
                    res.status = LpStatus::infeasible;
                    return res;  // empty box; certificate omitted
                }
                upper_rows.emplace_back(static_cast<int>(j), residual);
            }
        } else {
            vm.pos = ncols++;
            vm.neg = ncols++;
            if (bounds[j].upper.has_value())
                upper_rows.emplace_back(static_cast<int>(j), *bounds[j].upper);
        }
    }

    const std::size_t user_rows = lp.rows.size();
    tf.user_rows = user_rows;
    std::size_t nslack = 0;
    for (const auto& row : lp.rows)
        if (row.rel != Rel::eq) ++nslack;
    nslack += upper_rows.size();
    const std::size_t m = user_rows + upper_rows.size();
    const std::size_t n = static_cast<std::size_t>(ncols) + nslack;

    Tableau t;
    t.m = m;
    t.n = n;
    t.a.assign(m, std::vector<Rat>(n + m + 1, Rat(0)));
    t.basis.assign(m, -1);
    tf.row_scale.assign(m, Rat(1));

    std::size_t slack_at = static_cast<std::size_t>(ncols);
    auto fill_row = [&](std::size_t i, const std::vector<std::pair<int, Rat>>& coeffs, Rel rel,
                        const Rat& rhs) {
        Rat b = rhs;
        for (const auto& [uj, c] : coeffs) {
            const auto& vm = tf.vars[static_cast<std::size_t>(uj)];
            t.a[i][static_cast<std::size_t>(vm.pos)] += c;
            if (vm.neg >= 0) t.a[i][static_cast<std::size_t>(vm.neg)] -= c;
            if (vm.shift != 0) b -= c * vm.shift;
        }
        if (rel == Rel::le)
            t.a[i][slack_at++] = 1;
        else if (rel == Rel::ge)
            t.a[i][slack_at++] = -1;
        t.a[i][t.rhs_col()] = b;
        if (b < 0) {
            tf.row_scale[i] = -1;
            for (Rat& v : t.a[i])
                if (v != 0) v = -v;
        }
    };
    for (std::size_t i = 0; i < user_rows; ++i)
        fill_row(i, lp.rows[i].coeffs, lp.rows[i].rel, lp.rows[i].rhs);
    for (std::size_t k = 0; k < upper_rows.size(); ++k)
        fill_row(user_rows + k, {{upper_rows[k].first, Rat(1)}}, Rel::le, upper_rows[k].second);

    // Phase 1: artificial basis, minimize artificial sum.
    for (std::size_t i = 0; i < m; ++i) {
        t.a[i][n + i] = 1;
        t.basis[i] = static_cast<int>(n + i);
    }
    t.cost.assign(n + m + 1, Rat(0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j <= n + m; ++j)
            if (t.a[i][j] != 0) t.cost[j] -= t.a[i][j];
    for (std::size_t i = 0; i < m; ++i) t.cost[n + i] = 0;

    bool unbounded = false;
    while (t.step(n, unbounded)) {}
    LpResult res;
    if (-t.cost[t.rhs_col()] > 0) {
        res.status = LpStatus::infeasible;
        // Simplex multipliers y_i = 1 - reduced_cost(artificial_i); valid
        // user-level certificate only when no synthetic structure intrudes.
        bool plain = upper_rows.empty();
        for (std::size_t j = 0; plain && j < nu; ++j)
            if (tf.vars[j].neg >= 0 || tf.vars[j].shift != 0) plain = false;
        if (plain) {
            res.farkas.assign(user_rows, Rat(0));
            for (std::size_t i = 0; i < user_rows; ++i)
                res.farkas[i] = (Rat(1) - t.cost[n + i]) * tf.row_scale[i];
            res.farkas_gap = -t.cost[t.rhs_col()];
        }
        return res;
    }

    // Drive artificials out of the basis; drop rows that reveal themselves
    // as redundant (all-zero structural part).
    for (std::size_t i = 0; i < m; ++i) {
        if (t.basis[i] < static_cast<int>(n)) continue;
        std::size_t c = n;
        for (std::size_t j = 0; j < n; ++j)
            if (t.a[i][j] != 0) { c = j; break; }
        if (c < n) t.pivot(i, c);
        // else: redundant row; harmless to keep, artificial stays basic at 0.
    }

    // Phase 2.
    const bool maximize = lp.sense == Sense::maximize;
    t.cost.assign(n + m + 1, Rat(0));
    for (std::size_t j = 0; j < nu; ++j) {
        Rat c = maximize ? -objective[j] : objective[j];
        const auto& vm = tf.vars[j];
        t.cost[static_cast<std::size_t>(vm.pos)] += c;
        if (vm.neg >= 0) t.cost[static_cast<std::size_t>(vm.neg)] -= c;
    }
    Rat const_term = 0;
    for (std::size_t j = 0; j < nu; ++j)
        if (tf.vars[j].shift != 0)
            const_term += (maximize ? -objective[j] : objective[j]) * tf.vars[j].shift;
    // Price out the current basis.
    for (std::size_t i = 0; i < m; ++i) {
        int bj = t.basis[i];
        if (bj >= 0 && t.cost[static_cast<std::size_t>(bj)] != 0) {
            Rat f = t.cost[static_cast<std::size_t>(bj)];
            for (std::size_t j = 0; j <= n + m; ++j)
                if (t.a[i][j] != 0) t.cost[j] -= f * t.a[i][j];
        }
    }
    while (t.step(n, unbounded)) {}
    if (unbounded) {
        res.status = LpStatus::unbounded;
        return res;
    }

    res.status = LpStatus::optimal;
    Rat solver_obj = -t.cost[t.rhs_col()] + const_term;
    res.value = maximize ? Rat(-solver_obj) : solver_obj;
    std::vector<Rat> xs(n, Rat(0));
    for (std::size_t i = 0; i < m; ++i)
        if (t.basis[i] >= 0 && t.basis[i] < static_cast<int>(n))
            xs[static_cast<std::size_t>(t.basis[i])] = t.a[i][t.rhs_col()];
    res.solution.assign(nu, Rat(0));
    for (std::size_t j = 0; j < nu; ++j) {
        const auto& vm = tf.vars[j];
        Rat v = xs[static_cast<std::size_t>(vm.pos)];
        if (vm.neg >= 0) v -= xs[static_cast<std::size_t>(vm.neg)];
        res.solution[j] = v + vm.shift;
    }
    return res;
}

bool verify_farkas(const LinearProgram& lp, const std::vector<Rat>& y) {
    if (y.size() != lp.rows.size()) return false;
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
        if (lp.rows[i].rel == Rel::le && y[i] > 0) return false;
        if (lp.rows[i].rel == Rel::ge && y[i] < 0) return false;
    }
    std::vector<Rat> combo(static_cast<std::size_t>(lp.num_vars), Rat(0));
    Rat yb = 0;
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
        if (y[i] == 0) continue;
        for (const auto& [j, c] : lp.rows[i].coeffs) combo[static_cast<std::size_t>(j)] += y[i] * c;
        yb += y[i] * lp.rows[i].rhs;
    }
    for (const Rat& s : combo)
        if (s > 0) return false;  // x >= 0 could push y.Ax above y.b
    return yb > 0;
}

std::string lp_to_text(const LinearProgram& lp) {
    std::ostringstream os;
    os << (lp.sense == Sense::maximize ? "maximize" : "minimize") << "\n obj:";
    for (int j = 0; j < lp.num_vars; ++j) {
        Rat c = j < static_cast<int>(lp.objective.size()) ? lp.objective[static_cast<std::size_t>(j)] : Rat(0);
        if (c != 0) os << " " << (c > 0 ? "+" : "") << rat_str(c) << " x" << j;
    }
    os << "\nsubject to\n";
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
        os << " r" << i << ":";
        for (const auto& [j, c] : lp.rows[i].coeffs)
            os << " " << (c > 0 ? "+" : "") << rat_str(c) << " x" << j;
        const char* rel = lp.rows[i].rel == Rel::le ? "<=" : (lp.rows[i].rel == Rel::ge ? ">=" : "=");
        os << " " << rel << " " << rat_str(lp.rows[i].rhs) << "\n";
    }
    os << "bounds\n";
    for (int j = 0; j < lp.num_vars; ++j) {
        LinearProgram::VarBounds b = lp.bounds.empty() ? LinearProgram::VarBounds{}
                                                       : lp.bounds[static_cast<std::size_t>(j)];
        os << " " << (b.lower ? rat_str(*b.lower) : std::string("-inf")) << " <= x" << j << " <= "
           << (b.upper ? rat_str(*b.upper) : std::string("+inf")) << "\n";
    }
    os << "end\n";
    return os.str();
}

}  // namespace bellcomm
