#pragma once

#include "bellcomm/rational.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace bellcomm {

/**
 * A bipartite Bell scenario: per-input output cardinalities for both
 * parties, written [(o^A_1,...,o^A_nA)(o^B_1,...,o^B_nB)].
 *
 * Behavior vectors are indexed by (x, y, a, b) in lexicographic order with
 * x slowest; every module in this library uses that convention.
 */
class Scenario {
public:
    Scenario(std::vector<int> outputs_alice, std::vector<int> outputs_bob);

    int inputs_alice() const { return static_cast<int>(out_a_.size()); }
    int inputs_bob() const { return static_cast<int>(out_b_.size()); }
    int outputs_alice(int x) const { return out_a_.at(static_cast<std::size_t>(x)); }
    int outputs_bob(int y) const { return out_b_.at(static_cast<std::size_t>(y)); }

    /// Union alphabet sizes (max cardinality over inputs); the value space of
    /// a transmitted output in outcome-communication models.
    int alice_alphabet() const { return alpha_a_; }
    int bob_alphabet() const { return alpha_b_; }

    bool all_binary() const;

    /// Total behavior-vector length, sum over (x,y) of o^A_x * o^B_y.
    std::size_t size() const { return size_; }
    std::size_t block_offset(int x, int y) const;
    std::size_t block_size(int x, int y) const;
    std::size_t index(int x, int y, int a, int b) const;

    /// "[(2,2)(2,2)]"
    std::string str() const;
    /// Accepts comma- or space-separated cardinalities.
    static Scenario parse(const std::string& text);

    Scenario swapped() const { return Scenario(out_b_, out_a_); }

    friend bool operator==(const Scenario& l, const Scenario& r) {
        return l.out_a_ == r.out_a_ && l.out_b_ == r.out_b_;
    }
    friend bool operator!=(const Scenario& l, const Scenario& r) { return !(l == r); }

private:
    std::vector<int> out_a_, out_b_;
    std::vector<std::size_t> offsets_;
    std::size_t size_ = 0;
    int alpha_a_ = 0, alpha_b_ = 0;
};

struct ValidityIssue {
    enum class Kind { out_of_range_entry, block_not_normalized };
    Kind kind;
    int x = -1, y = -1;
    std::string detail;
};

struct ValidityReport {
    bool ok = true;
    std::vector<ValidityIssue> issues;
};

struct NsViolation {
    char party;          // 'A' or 'B': whose marginal depends on the far input
    int output;          // a (party A) or b (party B)
    int input;           // x (party A) or y (party B)
    int far_input_1, far_input_2;  // the two far-side inputs whose marginals differ
    Rat lhs, rhs;
    std::string str() const;
};

struct NsReport {
    bool ok = true;
    std::vector<NsViolation> violations;
};

/**
 * A conditional distribution p(a,b|x,y) over a scenario, stored as exact
 * rationals. Immutable after construction; safe to share across threads.
 */
class Behavior {
public:
    /// Throws std::invalid_argument on a length mismatch (a structural error,
    /// distinct from normalization failures reported by validate()).
    Behavior(Scenario scenario, std::vector<Rat> probs);

    const Scenario& scenario() const { return scenario_; }
    const std::vector<Rat>& probs() const { return probs_; }
    const Rat& at(int x, int y, int a, int b) const {
        return probs_[scenario_.index(x, y, a, b)];
    }

    /// Per-block normalization and range check, exact comparison.
    ValidityReport validate() const;

    /// Marginal-equality check of both parties, exact comparison.
    NsReport no_signalling() const;
    bool is_no_signalling() const { return no_signalling().ok; }

    /// p(a|x) evaluated from block (x, y_ref).
    Rat alice_marginal(int a, int x, int y_ref = 0) const;
    Rat bob_marginal(int b, int y, int x_ref = 0) const;

    /// <A_x B_y> = sum_{a,b} (-1)^{a+b} p(a,b|x,y); both outputs must be binary.
    Rat correlator(int x, int y) const;

    // Relabelings. Each returns a fresh Behavior.
    Behavior permute_alice_inputs(const std::vector<int>& perm) const;
    Behavior permute_bob_inputs(const std::vector<int>& perm) const;
    Behavior relabel_alice_outputs(int x, const std::vector<int>& perm) const;
    Behavior relabel_bob_outputs(int y, const std::vector<int>& perm) const;
    Behavior swap_parties() const;

    void write(std::ostream& os) const;
    static Behavior read(std::istream& is);
    std::string to_text() const;
    static Behavior from_text(const std::string& text);

    friend bool operator==(const Behavior& l, const Behavior& r) {
        return l.scenario_ == r.scenario_ && l.probs_ == r.probs_;
    }
    friend bool operator!=(const Behavior& l, const Behavior& r) { return !(l == r); }
    friend bool operator<(const Behavior& l, const Behavior& r) { return l.probs_ < r.probs_; }

private:
    Scenario scenario_;
    std::vector<Rat> probs_;
};

/// Convex combination w*b1 + (1-w)*b2, exact. Requires equal scenarios and
/// w in [0,1].
Behavior mix(const Behavior& b1, const Behavior& b2, const Rat& w);

/// p(a,b|x,y) = 1/(o^A_x o^B_y).
Behavior uniform_behavior(const Scenario& s);

/// The Popescu-Rohrlich box on [(2,2)(2,2)]: a xor b = x*y, each consistent
/// outcome with probability 1/2.
Behavior make_pr_box();

/// The [(2,2,2)(2,2,2)] family v*p_PR + (1-v)*p_uniform, where p_PR is the
/// three-input PR-box generalization (anticorrelated when x+y=3, correlated
/// otherwise).
Behavior make_i3322_pr(const Rat& v);

/// A nonlocal extremal no-signalling behavior of [(3,3,3)(3,2)] in which one
/// of the first party's outputs never occurs; used in the reproducibility and
/// noise-threshold studies.
Behavior make_vertex_333_32();

/// Pretty per-(x,y)-block table of rationals.
std::string behavior_table_text(const Behavior& b);

}  // namespace bellcomm
