#include "bellcomm/polytope.hpp"

#include "bellcomm/parallel.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

namespace bellcomm {

namespace {

// Dynamic bitset over the processed halfspaces, tracking which are tight.
struct ActiveSet {
    std::vector<std::uint64_t> words;
    void resize(std::size_t bits) { words.assign((bits + 63) / 64, 0); }
    void set(std::size_t i) { words[i / 64] |= (std::uint64_t{1} << (i % 64)); }
    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words) c += static_cast<std::size_t>(__builtin_popcountll(w));
        return c;
    }
    static ActiveSet intersect(const ActiveSet& a, const ActiveSet& b) {
        ActiveSet r;
        r.words.resize(a.words.size());
        for (std::size_t i = 0; i < a.words.size(); ++i) r.words[i] = a.words[i] & b.words[i];
        return r;
    }
    bool contains(const ActiveSet& sub) const {
        for (std::size_t i = 0; i < words.size(); ++i)
            if ((sub.words[i] & ~words[i]) != 0) return false;
        return true;
    }
};

struct Ray {
    RatVec v;
    ActiveSet active;
};

}  // namespace

ConeGenerators dd_cone(const RatMat& halfspaces, const DdBudget& budget) {
    if (halfspaces.empty()) throw std::invalid_argument("dd_cone: no halfspaces");
    const std::size_t dim = halfspaces[0].size();
    const std::size_t nh = halfspaces.size();

    RatMat lineality;
    lineality.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        RatVec e(dim, Rat(0));
        e[i] = 1;
        lineality.push_back(std::move(e));
    }
    std::vector<Ray> rays;

    for (std::size_t hidx = 0; hidx < nh; ++hidx) {
        const RatVec& h = halfspaces[hidx];

        // First try to consume a lineality direction not on the hyperplane.
        std::size_t pivot = lineality.size();
        for (std::size_t i = 0; i < lineality.size(); ++i)
            if (dot(h, lineality[i]) != 0) { pivot = i; break; }
        if (pivot < lineality.size()) {
            RatVec l = std::move(lineality[pivot]);
            lineality.erase(lineality.begin() + static_cast<long>(pivot));
            Rat hl = dot(h, l);
            if (hl < 0) {
                for (Rat& c : l) c = -c;
                hl = -hl;
            }
            for (RatVec& other : lineality) {
                Rat ho = dot(h, other);
                if (ho == 0) continue;
                Rat f = ho / hl;
                for (std::size_t j = 0; j < dim; ++j) other[j] -= f * l[j];
            }
            for (Ray& r : rays) {
                Rat hr = dot(h, r.v);
                if (hr == 0) { r.active.set(hidx); continue; }
                Rat f = hr / hl;
                for (std::size_t j = 0; j < dim; ++j) r.v[j] -= f * l[j];
                normalize_ray(r.v);
                r.active.set(hidx);
            }
            normalize_ray(l);
            Ray nr;
            nr.v = std::move(l);
            nr.active.resize(nh);
            // Tight for every constraint processed so far except this one;
            // recompute exactly (projections may have changed nothing here,
            // the new ray was never subject to earlier constraints).
            for (std::size_t k = 0; k <= hidx; ++k)
                if (dot(halfspaces[k], nr.v) == 0) nr.active.set(k);
            rays.push_back(std::move(nr));
            continue;
        }

        // h is orthogonal to all lineality: classic DD step on the rays.
        std::vector<std::size_t> pos, neg;
        std::vector<Rat> vals(rays.size());
        for (std::size_t i = 0; i < rays.size(); ++i) {
            vals[i] = dot(h, rays[i].v);
            if (vals[i] > 0)
                pos.push_back(i);
            else if (vals[i] < 0)
                neg.push_back(i);
            else
                rays[i].active.set(hidx);
        }
        if (neg.empty()) continue;

        std::vector<Ray> next;
        next.reserve(rays.size() + pos.size() * neg.size() / 4 + 1);
        for (std::size_t i = 0; i < rays.size(); ++i)
            if (vals[i] >= 0) next.push_back(std::move(rays[i]));

        const std::size_t min_common = dim >= lineality.size() + 2 ? dim - lineality.size() - 2 : 0;
        for (std::size_t ip : pos)
            for (std::size_t in : neg) {
                ActiveSet common = ActiveSet::intersect(rays[ip].active, rays[in].active);
                if (common.count() < min_common) continue;
                bool adjacent = true;
                for (std::size_t k = 0; adjacent && k < rays.size(); ++k) {
                    if (k == ip || k == in) continue;
                    if (rays[k].active.contains(common)) adjacent = false;
                }
                if (!adjacent) continue;
                Ray nr;
                nr.v.resize(dim);
                // vals[ip] * neg - vals[in] * pos lies on the hyperplane.
                for (std::size_t j = 0; j < dim; ++j)
                    nr.v[j] = vals[ip] * rays[in].v[j] - vals[in] * rays[ip].v[j];
                normalize_ray(nr.v);
                nr.active = std::move(common);
                nr.active.set(hidx);
                next.push_back(std::move(nr));
                if (next.size() > budget.max_rays)
                    throw BudgetError("double description exceeded ray budget (" +
                                      std::to_string(budget.max_rays) + ") at constraint " +
                                      std::to_string(hidx + 1) + "/" + std::to_string(nh));
            }
        rays = std::move(next);
    }

    ConeGenerators out;
    out.lineality = std::move(lineality);
    out.rays.reserve(rays.size());
    for (Ray& r : rays) out.rays.push_back(std::move(r.v));
    return out;
}

HPolytope ns_polytope(const Scenario& s) {
    const std::size_t n = s.size();
    HPolytope h{s, {}, {}, {}, {}, 0};

    RatMat eq;
    RatVec rhs;
    for (int x = 0; x < s.inputs_alice(); ++x)
        for (int y = 0; y < s.inputs_bob(); ++y) {
            RatVec row(n, Rat(0));
            for (int a = 0; a < s.outputs_alice(x); ++a)
                for (int b = 0; b < s.outputs_bob(y); ++b) row[s.index(x, y, a, b)] = 1;
            eq.push_back(std::move(row));
            rhs.push_back(Rat(1));
        }
    for (int x = 0; x < s.inputs_alice(); ++x)
        for (int a = 0; a < s.outputs_alice(x); ++a)
            for (int y = 0; y + 1 < s.inputs_bob(); ++y) {
                RatVec row(n, Rat(0));
                for (int b = 0; b < s.outputs_bob(y); ++b) row[s.index(x, y, a, b)] += 1;
                for (int b = 0; b < s.outputs_bob(y + 1); ++b) row[s.index(x, y + 1, a, b)] -= 1;
                eq.push_back(std::move(row));
                rhs.push_back(Rat(0));
            }
    for (int y = 0; y < s.inputs_bob(); ++y)
        for (int b = 0; b < s.outputs_bob(y); ++b)
            for (int x = 0; x + 1 < s.inputs_alice(); ++x) {
                RatVec row(n, Rat(0));
                for (int a = 0; a < s.outputs_alice(x); ++a) row[s.index(x, y, a, b)] += 1;
                for (int a = 0; a < s.outputs_alice(x + 1); ++a) row[s.index(x + 1, y, a, b)] -= 1;
                eq.push_back(std::move(row));
                rhs.push_back(Rat(0));
            }

    // Drop redundant equalities via row reduction of the augmented system.
    RatMat aug = eq;
    for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(rhs[i]);
    rref(aug);
    for (const RatVec& row : aug) {
        bool zero = std::all_of(row.begin(), row.end() - 1, [](const Rat& v) { return v == 0; });
        if (zero) continue;
        h.eq.emplace_back(row.begin(), row.end() - 1);
        h.eq_rhs.push_back(row.back());
    }

    for (std::size_t i = 0; i < n; ++i) {
        RatVec row(n, Rat(0));
        row[i] = 1;
        h.ineq.push_back(std::move(row));
        h.ineq_rhs.push_back(Rat(0));
    }
    h.dimension = static_cast<int>(n - h.eq.size());
    return h;
}

VertexSet enumerate_vertices(const HPolytope& h, const DdBudget& budget) {
    const std::size_t n = h.scenario.size();
    // Parametrize the affine subspace: p = p0 + V u.
    std::optional<RatVec> p0 = solve_any(h.eq, h.eq_rhs);
    if (!p0) throw std::invalid_argument("enumerate_vertices: inconsistent equalities");
    RatMat basis = nullspace(h.eq);
    const std::size_t d = basis.size();

    // Homogenize: rays (t, u) with t >= 0 and, per inequality a.p >= c,
    //   a.(p0 + V u) - c t >= 0 evaluated against (t, u).
    RatMat halfspaces;
    halfspaces.reserve(1 + h.ineq.size());
    {
        RatVec t_pos(d + 1, Rat(0));
        t_pos[0] = 1;
        halfspaces.push_back(std::move(t_pos));
    }
    for (std::size_t i = 0; i < h.ineq.size(); ++i) {
        RatVec row(d + 1, Rat(0));
        row[0] = dot(h.ineq[i], *p0) - h.ineq_rhs[i];
        for (std::size_t k = 0; k < d; ++k) row[k + 1] = dot(h.ineq[i], basis[k]);
        halfspaces.push_back(std::move(row));
    }

    ConeGenerators gen = dd_cone(halfspaces, budget);
    if (!gen.lineality.empty())
        throw std::logic_error("enumerate_vertices: unexpected lineality (polytope unbounded?)");

    VertexSet vs{h.scenario, {}, static_cast<int>(d)};
    for (const RatVec& r : gen.rays) {
        if (r[0] == 0)
            throw std::logic_error("enumerate_vertices: recession ray found (polytope unbounded?)");
        RatVec p = *p0;
        for (std::size_t k = 0; k < d; ++k) {
            if (r[k + 1] == 0) continue;
            Rat u = r[k + 1] / r[0];
            for (std::size_t j = 0; j < n; ++j)
                if (basis[k][j] != 0) p[j] += u * basis[k][j];
        }
        vs.vertices.emplace_back(h.scenario, std::move(p));
    }
    std::sort(vs.vertices.begin(), vs.vertices.end());
    return vs;
}

namespace {

std::string scenario_cache_key(const Scenario& s) {
    std::ostringstream os;
    os << "a";
    for (int x = 0; x < s.inputs_alice(); ++x) os << "-" << s.outputs_alice(x);
    os << "_b";
    for (int y = 0; y < s.inputs_bob(); ++y) os << "-" << s.outputs_bob(y);
    return os.str();
}

std::optional<VertexSet> load_vertex_cache(const std::string& path, const Scenario& s) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::string line;
    if (!std::getline(in, line) || line.rfind("bellcomm-vertices 1", 0) != 0) return std::nullopt;
    if (!std::getline(in, line)) return std::nullopt;
    if (Scenario::parse(line.substr(line.find(':') + 1)) != s) return std::nullopt;
    if (!std::getline(in, line)) return std::nullopt;
    int dim = std::stoi(line.substr(line.find(':') + 1));
    std::size_t count = 0;
    if (!std::getline(in, line)) return std::nullopt;
    count = static_cast<std::size_t>(std::stoul(line.substr(line.find(':') + 1)));
    VertexSet vs{s, {}, dim};
    vs.vertices.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::vector<Rat> p(s.size(), Rat(0));
        while (std::getline(in, line)) {
            if (line == "end") break;
            std::istringstream ls(line);
            std::size_t idx;
            std::string val;
            if (!(ls >> idx >> val)) return std::nullopt;
            p.at(idx) = parse_rational(val);
        }
        vs.vertices.emplace_back(s, std::move(p));
    }
    return vs;
}

void store_vertex_cache(const std::string& path, const VertexSet& vs) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) return;
        out << "bellcomm-vertices 1\n";
        out << "scenario: " << vs.scenario.str() << "\n";
        out << "dimension: " << vs.dimension << "\n";
        out << "count: " << vs.vertices.size() << "\n";
        for (const Behavior& b : vs.vertices) {
            for (std::size_t i = 0; i < b.probs().size(); ++i)
                if (b.probs()[i] != 0) out << i << " " << rat_str(b.probs()[i]) << "\n";
            out << "end\n";
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) std::remove(tmp.c_str());
}

}  // namespace

VertexSet ns_vertices_cached(const Scenario& s, const std::string& cache_dir, const DdBudget& budget) {
    std::string dir = cache_dir;
    if (dir.empty()) {
        const char* env = std::getenv("BELLCOMM_CACHE_DIR");
        if (env) dir = env;
    }
    std::string path;
    if (!dir.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        path = dir + "/vertices_" + scenario_cache_key(s) + ".txt";
        if (auto cached = load_vertex_cache(path, s)) return *cached;
    }
    VertexSet vs = enumerate_vertices(ns_polytope(s), budget);
    if (!path.empty()) store_vertex_cache(path, vs);
    return vs;
}

bool is_deterministic_vertex(const Behavior& b) {
    return std::all_of(b.probs().begin(), b.probs().end(),
                       [](const Rat& p) { return p == 0 || p == 1; });
}

SweepReport cod_reproducibility_sweep(const Scenario& s, const ModelSpec& m,
                                      const std::string& cache_dir, const Budget& budget,
                                      unsigned threads) {
    if (m.scenario != s) throw std::invalid_argument("sweep: scenario mismatch");
    VertexSet vs = ns_vertices_cached(s, cache_dir);
    StrategyMatrix t = build_strategy_matrix(m, budget);
    SweepReport rep{m, {}, true, 0};
    rep.entries.resize(vs.vertices.size());
    std::vector<std::size_t> nonlocal;
    for (std::size_t i = 0; i < vs.vertices.size(); ++i) {
        bool local = is_deterministic_vertex(vs.vertices[i]);
        rep.entries[i] = {i, local, true};
        if (!local) nonlocal.push_back(i);
    }
    rep.nonlocal_count = nonlocal.size();
    std::vector<char> member = parallel_map<char>(
        nonlocal.size(),
        [&](std::size_t k) { return membership(vs.vertices[nonlocal[k]], t).member ? char(1) : char(0); },
        threads);
    for (std::size_t k = 0; k < nonlocal.size(); ++k) {
        rep.entries[nonlocal[k]].member = member[k] != 0;
        if (!member[k]) rep.all_reproducible = false;
    }
    return rep;
}

ThresholdBracket noise_threshold(const Behavior& vertex, const Behavior& noise, const ModelSpec& m,
                                 const Rat& precision, const Budget& budget) {
    if (precision <= 0) throw std::invalid_argument("noise_threshold: precision must be positive");
    StrategyMatrix t = build_strategy_matrix(m, budget);
    auto probe = [&](const Rat& eps) { return membership(mix(noise, vertex, eps), t).member; };
    if (!probe(Rat(1)))
        throw std::domain_error("noise_threshold: the noise behavior itself is outside the model");
    if (probe(Rat(0))) return {Rat(0), Rat(0)};
    Rat lo = 0, hi = 1;
    while (hi - lo > precision) {
        Rat mid = (lo + hi) / 2;
        if (probe(mid))
            hi = mid;
        else
            lo = mid;
    }
    return {lo, hi};
}

Rat noise_threshold_exact(const Behavior& vertex, const Behavior& noise, const ModelSpec& m,
                          const Budget& budget) {
    StrategyMatrix t = build_strategy_matrix(m, budget);
    const std::size_t n = vertex.scenario().size();
    const std::size_t cols = t.num_columns();
    // Variables: q (cols), eps in [0,1]; rows: T q - eps*(noise - vertex) = vertex.
    LinearProgram lp;
    lp.num_vars = static_cast<int>(cols) + 1;
    lp.bounds.assign(static_cast<std::size_t>(lp.num_vars), {});
    lp.bounds.back() = {Rat(0), Rat(1)};
    lp.objective.assign(static_cast<std::size_t>(lp.num_vars), Rat(0));
    lp.objective.back() = 1;
    lp.sense = Sense::minimize;
    const int eps_var = static_cast<int>(cols);
    std::vector<std::vector<std::pair<int, Rat>>> coord_rows(n);
    for (std::size_t j = 0; j < cols; ++j)
        for (std::uint32_t i : t.columns[j]) coord_rows[i].emplace_back(static_cast<int>(j), Rat(1));
    for (std::size_t i = 0; i < n; ++i) {
        Rat delta = noise.probs()[i] - vertex.probs()[i];
        if (delta != 0) coord_rows[i].emplace_back(eps_var, -delta);
        lp.add_row(std::move(coord_rows[i]), Rel::eq, vertex.probs()[i]);
    }
    std::vector<std::pair<int, Rat>> norm;
    for (std::size_t j = 0; j < cols; ++j) norm.emplace_back(static_cast<int>(j), Rat(1));
    lp.add_row(std::move(norm), Rel::eq, Rat(1));
    LpResult r = solve(lp);
    if (r.status != LpStatus::optimal)
        throw std::domain_error("noise_threshold_exact: no mixture on the segment is a member");
    return r.value;
}

UniformMarginalDecomposition simulate_uniform_marginal_vertex(const Behavior& b) {
    const Scenario& s = b.scenario();
    const int na = s.inputs_alice(), nb = s.inputs_bob();

    // Support must not depend on x, and the marginal must be uniform on it.
    std::vector<int> support;
    for (int a = 0; a < s.alice_alphabet(); ++a) {
        bool occurs = false;
        for (int x = 0; x < na; ++x)
            if (a < s.outputs_alice(x) && b.alice_marginal(a, x) != 0) occurs = true;
        if (occurs) support.push_back(a);
    }
    const int k = static_cast<int>(support.size());
    if (k < na)
        throw std::domain_error("uniform-marginal simulation: effective output count " +
                                std::to_string(k) + " is below the input count " + std::to_string(na));
    const Rat unif(1, k);
    for (int x = 0; x < na; ++x)
        for (int a : support)
            if (a >= s.outputs_alice(x))
                throw std::domain_error("uniform-marginal simulation: support varies with the input");
    for (int x = 0; x < na; ++x)
        for (int y = 0; y < nb; ++y)
            for (int a = 0; a < s.outputs_alice(x); ++a) {
                Rat marg = b.alice_marginal(a, x, y);
                bool in_support = std::find(support.begin(), support.end(), a) != support.end();
                if (in_support && marg != unif)
                    throw std::domain_error(
                        "uniform-marginal simulation: marginal p(a=" + std::to_string(a) + "|x=" +
                        std::to_string(x) + ") = " + rat_str(marg) + " is not uniform on the support");
                if (!in_support && marg != 0)
                    throw std::domain_error("uniform-marginal simulation: support varies with the input");
            }

    // Enumerate injective maps inputs -> support.
    UniformMarginalDecomposition dec;
    dec.support = support;
    std::vector<int> map(static_cast<std::size_t>(na), -1);
    std::vector<bool> used(static_cast<std::size_t>(k), false);
    std::uint64_t total = 1;
    for (int i = 0; i < na; ++i) total *= static_cast<std::uint64_t>(k - i);
    const Rat weight(1, static_cast<long>(total));

    auto emit = [&]() {
        UniformMarginalDecomposition::Part part;
        part.weight = weight;
        part.alice_map.resize(static_cast<std::size_t>(na));
        part.bob.assign(static_cast<std::size_t>(na), {});
        for (int x = 0; x < na; ++x) {
            int a = support[static_cast<std::size_t>(map[static_cast<std::size_t>(x)])];
            part.alice_map[static_cast<std::size_t>(x)] = a;
            std::vector<Rat>& row = part.bob[static_cast<std::size_t>(x)];
            for (int y = 0; y < nb; ++y)
                for (int bb = 0; bb < s.outputs_bob(y); ++bb)
                    row.push_back(b.at(x, y, a, bb) * k);  // p(b|a,x,y) = p(a,b|x,y)/p(a|x)
        }
        dec.parts.push_back(std::move(part));
    };
    // Depth-first odometer over injective assignments, lexicographic order.
    std::function<void(int)> rec = [&](int x) {
        if (x == na) { emit(); return; }
        for (int i = 0; i < k; ++i) {
            if (used[static_cast<std::size_t>(i)]) continue;
            used[static_cast<std::size_t>(i)] = true;
            map[static_cast<std::size_t>(x)] = i;
            rec(x + 1);
            used[static_cast<std::size_t>(i)] = false;
        }
    };
    rec(0);

    if (decomposition_behavior(s, dec) != b)
        throw std::logic_error("uniform-marginal simulation: mixture failed exact verification");
    return dec;
}

Behavior decomposition_behavior(const Scenario& s, const UniformMarginalDecomposition& d) {
    std::vector<Rat> probs(s.size(), Rat(0));
    for (const auto& part : d.parts) {
        for (int x = 0; x < s.inputs_alice(); ++x) {
            int a = part.alice_map[static_cast<std::size_t>(x)];
            std::size_t at = 0;
            for (int y = 0; y < s.inputs_bob(); ++y)
                for (int bb = 0; bb < s.outputs_bob(y); ++bb) {
                    const Rat& c = part.bob[static_cast<std::size_t>(x)][at++];
                    if (c != 0) probs[s.index(x, y, a, bb)] += part.weight * c;
                }
        }
    }
    return Behavior(s, std::move(probs));
}

}  // namespace bellcomm
