#pragma once

#include "bellcomm/models.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bellcomm {

enum class CoeffSpace { probability, correlator };
enum class BoundKind { lhv, cod, mcpd, ns, quantum };
enum class BoundSense { upper, lower };  // value <= bound vs value >= bound

/// A marginal term c * p_A(output|input) or c * p_B(output|input). Expanding
/// it into behavior coordinates needs a reference far-side input and is
/// faithful only on no-signalling behaviors.
struct MarginalTerm {
    char party;  // 'A' or 'B'
    int output, input;
    Rat coeff;
};

/**
 * A linear functional on behaviors: either coefficients over behavior
 * coordinates (optionally plus marginal terms), or a full-correlator
 * coefficient matrix (all-binary scenarios only).
 */
struct LinearFunctional {
    std::string name;
    std::string description;
    Scenario scenario;
    CoeffSpace space = CoeffSpace::probability;
    std::vector<Rat> coeffs;  // probability: size scenario.size(); correlator: nA*nB row-major
    std::vector<MarginalTerm> marginals;
    Rat bound;
    BoundSense sense = BoundSense::upper;
    BoundKind bound_kind = BoundKind::lhv;
    int bound_message_dim = 0;  // mcpd bounds

    /// Exact inner product. Marginal-form functionals refuse behaviors that
    /// signal on the relevant side unless reference inputs are supplied.
    Rat evaluate(const Behavior& b, std::optional<int> ref_y = std::nullopt,
                 std::optional<int> ref_x = std::nullopt) const;

    /// Correlator form -> probability coordinates (binary outputs required).
    LinearFunctional to_probability_form() const;
    /// Marginal terms expanded at the given reference inputs.
    LinearFunctional expand_marginals(int ref_y, int ref_x) const;
    LinearFunctional scaled(const Rat& factor) const;

    // Output/observable relabelings, correlator space.
    LinearFunctional negate_observable(char party, int input) const;
    LinearFunctional swap_observables(char party, int input1, int input2) const;

    Rat correlator_coeff(int x, int y) const;
    std::string show() const;
};

/// Built-in inequalities: chsh, ch, i3322, i3322-cg, i2233, chained3, iab, m332.
const std::vector<LinearFunctional>& catalog();
const LinearFunctional& catalog_get(const std::string& name);

enum class ChainedVariant { canonical, cod_valid };

/**
 * Chained inequality on n binary-output inputs per party. The canonical
 * variant is the correlator form (classical bound 2n-2). The cod_valid
 * variant is the probability ("bracket") form with the first party's outputs
 * relabelled on every second input, which makes it hold for outcome-
 * communication models at odd n; it is a lower-bound functional (value >= 1).
 */
LinearFunctional make_chained(int n, ChainedVariant variant);

/**
 * Full-correlator message-model inequality for n inputs per party and
 * message dimension d: staircase coefficient matrix scaled by
 * 2/(n(n-1)+d+d^2), bound 1. Use .scaled((n(n-1)+d+d^2)/2) for the integer
 * staircase form.
 */
LinearFunctional make_mnd(int n, int d);

struct ModelBoundResult {
    Rat bound;
    DeterministicStrategy witness;
};

/**
 * Exact extremum of the functional over a model's deterministic strategies
 * (max by default, min when minimize = true). Computed by enumerating the
 * sender-side tables and optimizing the receiver cell-by-cell, which covers
 * the full strategy set without materializing it.
 */
ModelBoundResult model_bound(const LinearFunctional& f, const ModelSpec& m, bool minimize = false);

/// Brute-force variant over an explicit strategy enumeration (cross-check).
ModelBoundResult model_bound_enumerated(const LinearFunctional& f, const ModelSpec& m,
                                        const Budget& budget = {}, bool minimize = false);

/// LP maximum of the functional over the no-signalling polytope.
Rat ns_maximum(const LinearFunctional& f);

/// Functional evaluated on a table of floating correlators (3x3 etc.).
double evaluate_on_correlators(const LinearFunctional& f,
                               const std::vector<std::vector<double>>& corr);

/// Sparse text export of probability-form coefficients.
std::string functional_sparse_text(const LinearFunctional& f);

}  // namespace bellcomm
