#pragma once

#include "bellcomm/linalg.hpp"
#include "bellcomm/membership.hpp"
#include "bellcomm/models.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bellcomm {

struct DdBudget {
    std::size_t max_rays = 2'000'000;  // intermediate generator cap
};

/// Generators of a polyhedral cone: extreme rays of the pointed part plus a
/// lineality basis.
struct ConeGenerators {
    RatMat rays;
    RatMat lineality;
};

/**
 * Double description: extreme rays of {z : h.z >= 0 for every h in
 * halfspaces}, starting from full space and inserting halfspaces in the
 * given order (callers pass rows in their natural, lexicographic layout so
 * runs are reproducible). Exact arithmetic throughout; rays are normalized
 * to coprime integer vectors.
 */
ConeGenerators dd_cone(const RatMat& halfspaces, const DdBudget& budget = {});

/// H-representation of a polytope over behavior coordinates.
struct HPolytope {
    Scenario scenario;
    RatMat eq;        // rows a with a.p = eq_rhs
    RatVec eq_rhs;
    RatMat ineq;      // rows a with a.p >= ineq_rhs
    RatVec ineq_rhs;
    int dimension = 0;  // affine dimension
};

/// Normalization + marginal-equality constraints + nonnegativity, with
/// redundant equalities removed; dimension reported.
HPolytope ns_polytope(const Scenario& s);

struct VertexSet {
    Scenario scenario;
    std::vector<Behavior> vertices;  // sorted lexicographically by vector
    int dimension = 0;
};

VertexSet enumerate_vertices(const HPolytope& h, const DdBudget& budget = {});

/// Cached vertex enumeration of the no-signalling polytope. Cache directory
/// resolution: explicit argument, else $BELLCOMM_CACHE_DIR, else no cache.
VertexSet ns_vertices_cached(const Scenario& s, const std::string& cache_dir = "",
                             const DdBudget& budget = {});

/// True when the behavior is 0/1-valued, i.e. a deterministic point (exactly
/// the local vertices of the no-signalling polytope).
bool is_deterministic_vertex(const Behavior& b);

struct VertexReproducibility {
    std::size_t vertex_index;
    bool local;      // deterministic vertex, reproducibility trivial
    bool member;     // meaningful when !local
};

struct SweepReport {
    ModelSpec model;
    std::vector<VertexReproducibility> entries;
    bool all_reproducible = true;
    std::size_t nonlocal_count = 0;
};

/// Runs membership on every nonlocal vertex of the scenario's no-signalling
/// polytope (local ones are reported but skipped). threads = 0 picks the
/// hardware default.
SweepReport cod_reproducibility_sweep(const Scenario& s, const ModelSpec& m,
                                      const std::string& cache_dir = "",
                                      const Budget& budget = {}, unsigned threads = 0);

struct ThresholdBracket {
    Rat lo;  // mixture still outside the model (or 0 when member from the start)
    Rat hi;  // mixture inside the model
};

/**
 * Brackets the critical noise weight where (1-eps)*vertex + eps*noise enters
 * the model polytope, by bisection with an exact membership test at each
 * probe. Requires the noise point itself to be a member (the membership set
 * along the segment is then an interval reaching eps = 1).
 */
ThresholdBracket noise_threshold(const Behavior& vertex, const Behavior& noise, const ModelSpec& m,
                                 const Rat& precision, const Budget& budget = {});

/// Exact critical weight, as the optimum of a single LP over (weights, eps).
Rat noise_threshold_exact(const Behavior& vertex, const Behavior& noise, const ModelSpec& m,
                          const Budget& budget = {});

/**
 * Outcome-communication simulation of a behavior whose first-party marginal
 * is uniform on a fixed support of size k >= n_A: shared randomness ranges
 * over the k!/(k-n)! injective input->support maps, the sender outputs the
 * mapped value, and the receiver (who can invert the map) replies from the
 * conditional distribution. The mixture is verified to reproduce the
 * behavior exactly before returning.
 */
struct UniformMarginalDecomposition {
    std::vector<int> support;  // sender outputs that occur
    struct Part {
        std::vector<int> alice_map;          // x -> a, injective into support
        std::vector<std::vector<Rat>> bob;   // [x][y*ob+b]: p(b | a=map(x), x, y)
        Rat weight;
    };
    std::vector<Part> parts;
};

UniformMarginalDecomposition simulate_uniform_marginal_vertex(const Behavior& b);

/// Mixture induced by a decomposition (for round-trip checks).
Behavior decomposition_behavior(const Scenario& s, const UniformMarginalDecomposition& d);

}  // namespace bellcomm
