#pragma once

#include "bellcomm/scenario.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace bellcomm {

enum class ModelKind {
    lhv,             // shared randomness only
    cpd_one_way,     // sender's input wired to receiver's output
    cpd_two_way,     // both outputs see both inputs
    cod_one_way,     // sender's output wired to receiver's output
    cod_convex,      // convex mixture of the two one-way outcome models
    mcpd_one_way,    // input-dependent message of dimension d to the receiver
};

enum class Direction { a_to_b, b_to_a };

struct ModelSpec {
    ModelKind kind = ModelKind::lhv;
    Scenario scenario;
    Direction direction = Direction::a_to_b;
    int message_dim = 1;  // mcpd only; d = 1 degenerates to lhv

    static ModelSpec lhv(Scenario s) { return {ModelKind::lhv, std::move(s), Direction::a_to_b, 1}; }
    static ModelSpec cpd(Scenario s, Direction dir = Direction::a_to_b) {
        return {ModelKind::cpd_one_way, std::move(s), dir, 1};
    }
    static ModelSpec cpd_two_way(Scenario s) {
        return {ModelKind::cpd_two_way, std::move(s), Direction::a_to_b, 1};
    }
    static ModelSpec cod(Scenario s, Direction dir = Direction::a_to_b) {
        return {ModelKind::cod_one_way, std::move(s), dir, 1};
    }
    static ModelSpec cod_convex(Scenario s) {
        return {ModelKind::cod_convex, std::move(s), Direction::a_to_b, 1};
    }
    static ModelSpec mcpd(Scenario s, int d, Direction dir = Direction::a_to_b) {
        return {ModelKind::mcpd_one_way, std::move(s), dir, d};
    }

    std::string str() const;
};

/**
 * A deterministic strategy: explicit response tables for both parties plus,
 * for message models, the message function. The canonical label is the
 * mixed-radix encoding of the tables (sender table, message table, receiver
 * table, each scanned in index order), stable across runs.
 */
struct DeterministicStrategy {
    ModelKind kind = ModelKind::lhv;
    Direction direction = Direction::a_to_b;
    // Table layouts by kind (nA = inputs_alice, nB = inputs_bob):
    //   lhv:            alice[x],           bob[y]
    //   cpd a_to_b:     alice[x],           bob[x*nB + y]
    //   cpd b_to_a:     alice[y*nA + x],    bob[y]
    //   cpd_two_way:    alice[x*nB + y],    bob[x*nB + y]
    //   cod a_to_b:     alice[x],           bob[a*nB + y]   (a over the union alphabet)
    //   cod b_to_a:     alice[b*nA + x],    bob[y]
    //   mcpd a_to_b:    alice[x], message[x], bob[m*nB + y]
    //   mcpd b_to_a:    bob[y],  message[y], alice[m*nA + x]   (alice/bob fields keep party meaning)
    std::vector<int> alice, bob, message;
    std::uint64_t label = 0;

    /// Outcome pair produced on inputs (x, y).
    std::pair<int, int> outputs(const Scenario& s, int x, int y) const;
    /// Message symbol sent on the sender's input (mcpd only).
    int message_value(int sender_input) const { return message.at(static_cast<std::size_t>(sender_input)); }
};

struct Budget {
    std::uint64_t max_strategies = 2'000'000;
};

/// Exact strategy count for the model (refusal threshold for enumeration).
std::uint64_t strategy_count(const ModelSpec& m);

/// Complete, duplicate-free enumeration in label order. Throws BudgetError
/// (with the count estimate) instead of truncating.
std::vector<DeterministicStrategy> enumerate_strategies(const ModelSpec& m, const Budget& budget = {});

/// Streaming form of the same enumeration; the strategy reference is only
/// valid during the callback.
void for_each_strategy(const ModelSpec& m, const Budget& budget,
                       const std::function<void(const DeterministicStrategy&)>& fn);

/// Message cost in bits: 0 for a constant message function, otherwise
/// log2(number of distinct symbols used). Exact when that count is a power
/// of two; otherwise the dyadic double closest to log2(k).
Rat bits_required(const DeterministicStrategy& s);

/**
 * The 0/1 matrix T with one column per strategy-induced behavior; columns
 * are stored sparsely as the behavior index hit in each (x,y) block.
 * Identical columns are merged; `labels` keeps every strategy label behind
 * each column.
 */
struct StrategyMatrix {
    Scenario scenario;
    std::vector<std::vector<std::uint32_t>> columns;  // per column: one index per (x,y) block
    std::vector<std::vector<std::uint64_t>> labels;

    std::size_t num_columns() const { return columns.size(); }
    /// Dense behavior column j.
    std::vector<Rat> column_vector(std::size_t j) const;
};

StrategyMatrix build_strategy_matrix(const ModelSpec& m, const Budget& budget = {});

/// Sparse "row column value" text; one strategy label per line in the
/// sidecar (column index, then the labels it represents).
std::string strategy_matrix_sparse_text(const StrategyMatrix& t);
std::string strategy_matrix_labels_text(const StrategyMatrix& t);

/// Behavior of one strategy (unit mass).
Behavior strategy_behavior(const Scenario& s, const DeterministicStrategy& st);

}  // namespace bellcomm
