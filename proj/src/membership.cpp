#include "bellcomm/membership.hpp"

namespace bellcomm {

MembershipResult membership(const Behavior& b, const StrategyMatrix& t) {
    if (b.scenario() != t.scenario) throw std::invalid_argument("membership: scenario mismatch");
    const std::size_t n = b.scenario().size();
    const std::size_t cols = t.num_columns();

    LinearProgram lp;
    lp.num_vars = static_cast<int>(cols);
    lp.rows.reserve(n + 1);
    std::vector<std::vector<std::pair<int, Rat>>> coord_rows(n);
    for (std::size_t j = 0; j < cols; ++j)
        for (std::uint32_t i : t.columns[j]) coord_rows[i].emplace_back(static_cast<int>(j), Rat(1));
    for (std::size_t i = 0; i < n; ++i)
        lp.add_row(std::move(coord_rows[i]), Rel::eq, b.probs()[i]);
    std::vector<std::pair<int, Rat>> norm;
    norm.reserve(cols);
    for (std::size_t j = 0; j < cols; ++j) norm.emplace_back(static_cast<int>(j), Rat(1));
    lp.add_row(std::move(norm), Rel::eq, Rat(1));

    LpResult r = solve(lp);
    MembershipResult out;
    if (r.status == LpStatus::optimal) {
        out.member = true;
        out.weights = std::move(r.solution);
        // Exact reconstruction check.
        std::vector<Rat> recon(n, Rat(0));
        Rat total = 0;
        for (std::size_t j = 0; j < cols; ++j) {
            if (out.weights[j] == 0) continue;
            if (out.weights[j] < 0) throw std::logic_error("membership: negative weight");
            total += out.weights[j];
            for (std::uint32_t i : t.columns[j]) recon[i] += out.weights[j];
        }
        if (total != 1 || recon != b.probs())
            throw std::logic_error("membership: decomposition failed exact verification");
        return out;
    }
    if (r.status != LpStatus::infeasible || r.farkas.empty())
        throw std::logic_error("membership: solver returned no certificate");

    // Farkas vector y over (coordinate rows, normalization row): the
    // functional g = y[0..n) with threshold -y[n] separates b.
    out.member = false;
    out.functional.assign(r.farkas.begin(), r.farkas.begin() + static_cast<long>(n));
    out.bound = -r.farkas[n];
    out.value = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (out.functional[i] != 0) out.value += out.functional[i] * b.probs()[i];
    if (out.value <= out.bound)
        throw std::logic_error("membership: certificate does not separate the behavior");
    for (std::size_t j = 0; j < cols; ++j) {
        Rat v = 0;
        for (std::uint32_t i : t.columns[j]) v += out.functional[i];
        if (v > out.bound)
            throw std::logic_error("membership: certificate fails on a strategy column");
    }
    return out;
}

MembershipResult membership(const Behavior& b, const ModelSpec& m, const Budget& budget) {
    if (b.scenario() != m.scenario) throw std::invalid_argument("membership: scenario mismatch");
    return membership(b, build_strategy_matrix(m, budget));
}

}  // namespace bellcomm
