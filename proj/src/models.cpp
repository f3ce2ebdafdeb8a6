#include "bellcomm/models.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bellcomm {

namespace {

const char* kind_name(ModelKind k) {
    switch (k) {
        case ModelKind::lhv: return "lhv";
        case ModelKind::cpd_one_way: return "cpd";
        case ModelKind::cpd_two_way: return "cpd-two-way";
        case ModelKind::cod_one_way: return "cod";
        case ModelKind::cod_convex: return "cod-convex";
        case ModelKind::mcpd_one_way: return "mcpd";
    }
    return "?";
}

// Radix vector of a model's response tables, in label order. For cod_convex
// this is done per direction.
struct TableShape {
    std::vector<int> radices;           // one digit per table cell
    int alice_cells = 0, message_cells = 0, bob_cells = 0;
};

TableShape table_shape(const ModelSpec& m, Direction dir) {
    const Scenario& s = m.scenario;
    const int na = s.inputs_alice(), nb = s.inputs_bob();
    TableShape sh;
    auto push_alice_by_x = [&] {
        for (int x = 0; x < na; ++x) sh.radices.push_back(s.outputs_alice(x));
        sh.alice_cells = na;
    };
    auto push_bob_by_y = [&] {
        for (int y = 0; y < nb; ++y) sh.radices.push_back(s.outputs_bob(y));
        sh.bob_cells = nb;
    };
    // Digit order defines the label: sender table, message table (mcpd),
    // receiver table, each scanned in index order.
    switch (m.kind) {
        case ModelKind::lhv:
            push_alice_by_x();
            push_bob_by_y();
            break;
        case ModelKind::cpd_one_way:
            if (dir == Direction::a_to_b) {
                push_alice_by_x();
                for (int x = 0; x < na; ++x)
                    for (int y = 0; y < nb; ++y) sh.radices.push_back(s.outputs_bob(y));
                sh.bob_cells = na * nb;
            } else {
                push_bob_by_y();
                for (int y = 0; y < nb; ++y)
                    for (int x = 0; x < na; ++x) sh.radices.push_back(s.outputs_alice(x));
                sh.alice_cells = na * nb;
            }
            break;
        case ModelKind::cpd_two_way:
            for (int x = 0; x < na; ++x)
                for (int y = 0; y < nb; ++y) sh.radices.push_back(s.outputs_alice(x));
            sh.alice_cells = na * nb;
            for (int x = 0; x < na; ++x)
                for (int y = 0; y < nb; ++y) sh.radices.push_back(s.outputs_bob(y));
            sh.bob_cells = na * nb;
            break;
        case ModelKind::cod_one_way:
            if (dir == Direction::a_to_b) {
                push_alice_by_x();
                for (int a = 0; a < s.alice_alphabet(); ++a)
                    for (int y = 0; y < nb; ++y) sh.radices.push_back(s.outputs_bob(y));
                sh.bob_cells = s.alice_alphabet() * nb;
            } else {
                push_bob_by_y();
                for (int b = 0; b < s.bob_alphabet(); ++b)
                    for (int x = 0; x < na; ++x) sh.radices.push_back(s.outputs_alice(x));
                sh.alice_cells = s.bob_alphabet() * na;
            }
            break;
        case ModelKind::mcpd_one_way:
            if (dir == Direction::a_to_b) {
                push_alice_by_x();
                for (int x = 0; x < na; ++x) sh.radices.push_back(m.message_dim);
                sh.message_cells = na;
                for (int mm = 0; mm < m.message_dim; ++mm)
                    for (int y = 0; y < nb; ++y) sh.radices.push_back(s.outputs_bob(y));
                sh.bob_cells = m.message_dim * nb;
            } else {
                push_bob_by_y();
                for (int y = 0; y < nb; ++y) sh.radices.push_back(m.message_dim);
                sh.message_cells = nb;
                for (int mm = 0; mm < m.message_dim; ++mm)
                    for (int x = 0; x < na; ++x) sh.radices.push_back(s.outputs_alice(x));
                sh.alice_cells = m.message_dim * na;
            }
            break;
        case ModelKind::cod_convex:
            throw std::logic_error("cod_convex has no single table shape");
    }
    return sh;
}

std::uint64_t shape_count(const TableShape& sh) {
    std::uint64_t n = 1;
    for (int r : sh.radices) {
        if (n > UINT64_MAX / static_cast<std::uint64_t>(r))
            throw BudgetError("strategy count overflows 64 bits");
        n *= static_cast<std::uint64_t>(r);
    }
    return n;
}

DeterministicStrategy strategy_from_digits(const ModelSpec& m, Direction dir, const TableShape& sh,
                                           const std::vector<int>& digits, std::uint64_t label) {
    DeterministicStrategy st;
    st.kind = m.kind == ModelKind::cod_convex ? ModelKind::cod_one_way : m.kind;
    st.direction = dir;
    st.label = label;
    // Digits appear in the shape's order: sender table, message table (mcpd),
    // receiver table.
    const bool bob_sends = st.kind != ModelKind::lhv && st.kind != ModelKind::cpd_two_way &&
                           dir == Direction::b_to_a;
    std::vector<int>& first = bob_sends ? st.bob : st.alice;
    std::vector<int>& last = bob_sends ? st.alice : st.bob;
    const int first_cells = bob_sends ? sh.bob_cells : sh.alice_cells;
    std::size_t at = static_cast<std::size_t>(first_cells);
    first.assign(digits.begin(), digits.begin() + first_cells);
    if (st.kind == ModelKind::mcpd_one_way) {
        st.message.assign(digits.begin() + at, digits.begin() + at + sh.message_cells);
        at += static_cast<std::size_t>(sh.message_cells);
    }
    last.assign(digits.begin() + at, digits.end());
    return st;
}

void enumerate_shape(const ModelSpec& m, Direction dir, std::uint64_t label_base,
                     const std::function<void(const DeterministicStrategy&)>& fn) {
    TableShape sh = table_shape(m, dir);
    std::vector<int> digits(sh.radices.size(), 0);
    std::uint64_t label = label_base;
    while (true) {
        fn(strategy_from_digits(m, dir, sh, digits, label));
        ++label;
        // Odometer: last cell varies fastest.
        std::size_t i = digits.size();
        while (i > 0) {
            --i;
            if (++digits[i] < sh.radices[i]) break;
            digits[i] = 0;
            if (i == 0) return;
        }
        if (digits.size() == 0) return;
    }
}

}  // namespace

std::string ModelSpec::str() const {
    std::ostringstream os;
    os << kind_name(kind);
    if (kind == ModelKind::cpd_one_way || kind == ModelKind::cod_one_way ||
        kind == ModelKind::mcpd_one_way)
        os << (direction == Direction::a_to_b ? "(a->b)" : "(b->a)");
    if (kind == ModelKind::mcpd_one_way) os << " d=" << message_dim;
    os << " " << scenario.str();
    return os.str();
}

std::pair<int, int> DeterministicStrategy::outputs(const Scenario& s, int x, int y) const {
    const int na = s.inputs_alice(), nb = s.inputs_bob();
    switch (kind) {
        case ModelKind::lhv:
            return {alice[static_cast<std::size_t>(x)], bob[static_cast<std::size_t>(y)]};
        case ModelKind::cpd_one_way:
            if (direction == Direction::a_to_b)
                return {alice[static_cast<std::size_t>(x)], bob[static_cast<std::size_t>(x * nb + y)]};
            return {alice[static_cast<std::size_t>(y * na + x)], bob[static_cast<std::size_t>(y)]};
        case ModelKind::cpd_two_way:
            return {alice[static_cast<std::size_t>(x * nb + y)], bob[static_cast<std::size_t>(x * nb + y)]};
        case ModelKind::cod_one_way:
            if (direction == Direction::a_to_b) {
                int a = alice[static_cast<std::size_t>(x)];
                return {a, bob[static_cast<std::size_t>(a * nb + y)]};
            } else {
                int b = bob[static_cast<std::size_t>(y)];
                return {alice[static_cast<std::size_t>(b * na + x)], b};
            }
        case ModelKind::mcpd_one_way:
            if (direction == Direction::a_to_b) {
                int mm = message[static_cast<std::size_t>(x)];
                return {alice[static_cast<std::size_t>(x)], bob[static_cast<std::size_t>(mm * nb + y)]};
            } else {
                int mm = message[static_cast<std::size_t>(y)];
                return {alice[static_cast<std::size_t>(mm * na + x)], bob[static_cast<std::size_t>(y)]};
            }
        case ModelKind::cod_convex:
            break;
    }
    throw std::logic_error("strategy kind has no direct output rule");
}

std::uint64_t strategy_count(const ModelSpec& m) {
    if (m.kind == ModelKind::mcpd_one_way && m.message_dim < 1)
        throw std::invalid_argument("message dimension must be >= 1");
    if (m.kind == ModelKind::cod_convex) {
        ModelSpec ab = ModelSpec::cod(m.scenario, Direction::a_to_b);
        ModelSpec ba = ModelSpec::cod(m.scenario, Direction::b_to_a);
        return strategy_count(ab) + strategy_count(ba);
    }
    return shape_count(table_shape(m, m.direction));
}

void for_each_strategy(const ModelSpec& m, const Budget& budget,
                       const std::function<void(const DeterministicStrategy&)>& fn) {
    std::uint64_t count = strategy_count(m);
    if (count > budget.max_strategies)
        throw BudgetError("strategy enumeration refused: " + m.str() + " has " +
                          std::to_string(count) + " strategies (budget " +
                          std::to_string(budget.max_strategies) + ")");
    if (m.kind == ModelKind::cod_convex) {
        ModelSpec ab = ModelSpec::cod(m.scenario, Direction::a_to_b);
        ModelSpec ba = ModelSpec::cod(m.scenario, Direction::b_to_a);
        enumerate_shape(ab, Direction::a_to_b, 0, fn);
        enumerate_shape(ba, Direction::b_to_a, strategy_count(ab), fn);
        return;
    }
    enumerate_shape(m, m.direction, 0, fn);
}

std::vector<DeterministicStrategy> enumerate_strategies(const ModelSpec& m, const Budget& budget) {
    std::vector<DeterministicStrategy> out;
    out.reserve(strategy_count(m));
    for_each_strategy(m, budget, [&](const DeterministicStrategy& st) { out.push_back(st); });
    return out;
}

Rat bits_required(const DeterministicStrategy& s) {
    if (s.kind != ModelKind::mcpd_one_way)
        throw std::domain_error("message cost is defined only for message-model strategies");
    std::vector<int> used = s.message;
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    const std::size_t k = used.size();
    if (k <= 1) return Rat(0);
    if ((k & (k - 1)) == 0) {
        int bits = 0;
        for (std::size_t v = k; v > 1; v >>= 1) ++bits;
        return Rat(bits);
    }
    return Rat(std::log2(static_cast<double>(k)));
}

Behavior strategy_behavior(const Scenario& s, const DeterministicStrategy& st) {
    std::vector<Rat> probs(s.size(), Rat(0));
    for (int x = 0; x < s.inputs_alice(); ++x)
        for (int y = 0; y < s.inputs_bob(); ++y) {
            auto [a, b] = st.outputs(s, x, y);
            probs[s.index(x, y, a, b)] = 1;
        }
    return Behavior(s, std::move(probs));
}

StrategyMatrix build_strategy_matrix(const ModelSpec& m, const Budget& budget) {
    const Scenario& s = m.scenario;
    const int na = s.inputs_alice(), nb = s.inputs_bob();
    StrategyMatrix t{s, {}, {}};
    std::map<std::vector<std::uint32_t>, std::size_t> seen;
    for_each_strategy(m, budget, [&](const DeterministicStrategy& st) {
        std::vector<std::uint32_t> col;
        col.reserve(static_cast<std::size_t>(na) * static_cast<std::size_t>(nb));
        for (int x = 0; x < na; ++x)
            for (int y = 0; y < nb; ++y) {
                auto [a, b] = st.outputs(s, x, y);
                col.push_back(static_cast<std::uint32_t>(s.index(x, y, a, b)));
            }
        auto [it, inserted] = seen.emplace(std::move(col), t.columns.size());
        if (inserted) {
            t.columns.push_back(it->first);
            t.labels.push_back({st.label});
        } else {
            t.labels[it->second].push_back(st.label);
        }
    });
    return t;
}

std::vector<Rat> StrategyMatrix::column_vector(std::size_t j) const {
    std::vector<Rat> v(scenario.size(), Rat(0));
    for (std::uint32_t idx : columns[j]) v[idx] = 1;
    return v;
}

std::string strategy_matrix_sparse_text(const StrategyMatrix& t) {
    std::ostringstream os;
    os << t.scenario.size() << " " << t.columns.size() << "\n";
    for (std::size_t j = 0; j < t.columns.size(); ++j)
        for (std::uint32_t i : t.columns[j]) os << i << " " << j << " 1\n";
    return os.str();
}

std::string strategy_matrix_labels_text(const StrategyMatrix& t) {
    std::ostringstream os;
    for (std::size_t j = 0; j < t.columns.size(); ++j) {
        os << j << ":";
        for (std::uint64_t l : t.labels[j]) os << " " << l;
        os << "\n";
    }
    return os.str();
}

}  // namespace bellcomm
