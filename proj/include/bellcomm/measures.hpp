#pragma once

#include "bellcomm/catalog.hpp"
#include "bellcomm/membership.hpp"

#include <optional>

namespace bellcomm {

/**
 * Minimal direct causal influence of the model's communication link on the
 * receiving party, over all decompositions reproducing the behavior:
 * the decomposition-averaged worst interventional shift
 *   min_q  max_{b,y,v,v'}  sum_l q_l |p(b|do(v),y,l) - p(b|do(v'),y,l)|
 * where v is the sender's input (parameter models) or output (outcome
 * models). Solved as one LP with an epigraph variable over all tuples.
 * Requires kind cpd_one_way or cod_one_way; throws std::domain_error when
 * the behavior is not reproducible at all (possible for outcome models).
 */
Rat min_causal_influence(const Behavior& b, const ModelSpec& m, const Budget& budget = {});

/**
 * Same measure minimized over every no-signalling behavior achieving the
 * given functional value (normalization and no-signalling imposed, nothing
 * else). Throws std::domain_error when no model behavior attains the value.
 */
Rat min_causal_influence_given_value(const LinearFunctional& f, const Rat& value,
                                     const ModelSpec& m, const Budget& budget = {});

struct AvgCommResult {
    bool feasible = false;
    Rat bits;
    // When infeasible: a separating functional over behavior coordinates
    // (same contract as MembershipResult).
    std::vector<Rat> functional;
    Rat bound;
};

/// Minimal average message cost sum_l q_l m_l over decompositions of b in
/// the d-symbol message model (sender = first party).
AvgCommResult min_average_communication(const Behavior& b, int d, const Budget& budget = {});

/**
 * The projection of the decomposition polytope onto the message distribution
 * p(m) under equally likely inputs: all message distributions compatible
 * with the target. Vertices and the confirming facets are exact.
 */
struct MessagePolytope {
    int dim = 0;
    bool feasible = false;
    std::vector<RatVec> vertices;         // each a distribution over d symbols
    std::vector<RatVec> facets;           // rows (c0, c): c0 + c.z >= 0 valid
    std::vector<RatVec> equalities;       // rows (c0, c): c0 + c.z = 0
};

MessagePolytope message_polytope(const Behavior& b, int d, const Budget& budget = {});
MessagePolytope message_polytope_for_value(const LinearFunctional& f, const Rat& value, int d,
                                           const Budget& budget = {});

struct EntropyResult {
    bool feasible = false;
    double bits = 0;
    std::vector<RatVec> achieving;  // all minimizing message distributions
};

/// Minimal Shannon entropy of the message over the polytope's vertices
/// (entropy is concave, so vertex minimization is exact up to the floating
/// evaluation of H).
EntropyResult min_message_entropy(const Behavior& b, int d, const Budget& budget = {});
EntropyResult min_message_entropy_for_value(const LinearFunctional& f, const Rat& value, int d,
                                            const Budget& budget = {});

/// Largest functional value achievable by d-symbol message decompositions
/// whose mixture is no-signalling.
Rat max_value_with_message(const LinearFunctional& f, int d, const Budget& budget = {});

double binary_entropy(double p);
double shannon_entropy(const RatVec& dist);

}  // namespace bellcomm
