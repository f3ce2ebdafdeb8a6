#include "bellcomm/catalog.hpp"

#include "bellcomm/lp.hpp"
#include "bellcomm/polytope.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace bellcomm {

Rat LinearFunctional::correlator_coeff(int x, int y) const {
    if (space != CoeffSpace::correlator) throw std::logic_error("not a correlator functional");
    return coeffs[static_cast<std::size_t>(x) * static_cast<std::size_t>(scenario.inputs_bob()) +
                  static_cast<std::size_t>(y)];
}

Rat LinearFunctional::evaluate(const Behavior& b, std::optional<int> ref_y,
                               std::optional<int> ref_x) const {
    if (b.scenario() != scenario) throw std::invalid_argument("evaluate: scenario mismatch");
    if (space == CoeffSpace::correlator) {
        Rat v = 0;
        for (int x = 0; x < scenario.inputs_alice(); ++x)
            for (int y = 0; y < scenario.inputs_bob(); ++y) {
                Rat c = correlator_coeff(x, y);
                if (c != 0) v += c * b.correlator(x, y);
            }
        return v;
    }
    Rat v = 0;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        if (coeffs[i] != 0 && b.probs()[i] != 0) v += coeffs[i] * b.probs()[i];
    if (!marginals.empty()) {
        // Marginal terms are only well-defined when the behavior does not
        // signal on the relevant side; otherwise an explicit reference input
        // must be given.
        for (const MarginalTerm& t : marginals) {
            if (t.party == 'A') {
                if (!ref_y) {
                    Rat ref = b.alice_marginal(t.output, t.input, 0);
                    for (int y = 1; y < scenario.inputs_bob(); ++y)
                        if (b.alice_marginal(t.output, t.input, y) != ref)
                            throw std::domain_error(
                                "evaluate: behavior signals towards the first party; "
                                "supply a reference input for marginal terms");
                }
                v += t.coeff * b.alice_marginal(t.output, t.input, ref_y.value_or(0));
            } else {
                if (!ref_x) {
                    Rat ref = b.bob_marginal(t.output, t.input, 0);
                    for (int x = 1; x < scenario.inputs_alice(); ++x)
                        if (b.bob_marginal(t.output, t.input, x) != ref)
                            throw std::domain_error(
                                "evaluate: behavior signals towards the second party; "
                                "supply a reference input for marginal terms");
                }
                v += t.coeff * b.bob_marginal(t.output, t.input, ref_x.value_or(0));
            }
        }
    }
    return v;
}

LinearFunctional LinearFunctional::to_probability_form() const {
    if (space == CoeffSpace::probability) {
        if (marginals.empty()) return *this;
        throw std::logic_error("expand marginal terms explicitly with expand_marginals()");
    }
    LinearFunctional f = *this;
    f.space = CoeffSpace::probability;
    f.coeffs.assign(scenario.size(), Rat(0));
    f.marginals.clear();
    for (int x = 0; x < scenario.inputs_alice(); ++x)
        for (int y = 0; y < scenario.inputs_bob(); ++y) {
            Rat c = correlator_coeff(x, y);
            if (c == 0) continue;
            if (scenario.outputs_alice(x) != 2 || scenario.outputs_bob(y) != 2)
                throw std::domain_error("correlator functional on non-binary outputs");
            for (int a = 0; a < 2; ++a)
                for (int bb = 0; bb < 2; ++bb)
                    f.coeffs[scenario.index(x, y, a, bb)] += ((a + bb) % 2 == 0) ? c : -c;
        }
    return f;
}

LinearFunctional LinearFunctional::expand_marginals(int ref_y, int ref_x) const {
    if (space != CoeffSpace::probability) throw std::logic_error("not a probability functional");
    LinearFunctional f = *this;
    f.marginals.clear();
    for (const MarginalTerm& t : marginals) {
        if (t.party == 'A') {
            for (int b = 0; b < scenario.outputs_bob(ref_y); ++b)
                f.coeffs[scenario.index(t.input, ref_y, t.output, b)] += t.coeff;
        } else {
            for (int a = 0; a < scenario.outputs_alice(ref_x); ++a)
                f.coeffs[scenario.index(ref_x, t.input, a, t.output)] += t.coeff;
        }
    }
    return f;
}

LinearFunctional LinearFunctional::scaled(const Rat& factor) const {
    LinearFunctional f = *this;
    for (Rat& c : f.coeffs) c *= factor;
    for (MarginalTerm& t : f.marginals) t.coeff *= factor;
    f.bound *= factor;
    return f;
}

LinearFunctional LinearFunctional::negate_observable(char party, int input) const {
    if (space != CoeffSpace::correlator) throw std::logic_error("relabeling needs correlator form");
    LinearFunctional f = *this;
    for (int x = 0; x < scenario.inputs_alice(); ++x)
        for (int y = 0; y < scenario.inputs_bob(); ++y) {
            bool hit = (party == 'A') ? (x == input) : (y == input);
            if (hit) {
                std::size_t i = static_cast<std::size_t>(x) *
                                    static_cast<std::size_t>(scenario.inputs_bob()) +
                                static_cast<std::size_t>(y);
                f.coeffs[i] = -f.coeffs[i];
            }
        }
    return f;
}

LinearFunctional LinearFunctional::swap_observables(char party, int input1, int input2) const {
    if (space != CoeffSpace::correlator) throw std::logic_error("relabeling needs correlator form");
    LinearFunctional f = *this;
    const int nb = scenario.inputs_bob();
    auto at = [&](int x, int y) -> Rat& {
        return f.coeffs[static_cast<std::size_t>(x) * static_cast<std::size_t>(nb) +
                        static_cast<std::size_t>(y)];
    };
    if (party == 'A') {
        for (int y = 0; y < nb; ++y) std::swap(at(input1, y), at(input2, y));
    } else {
        for (int x = 0; x < scenario.inputs_alice(); ++x) std::swap(at(x, input1), at(x, input2));
    }
    return f;
}

std::string LinearFunctional::show() const {
    std::ostringstream os;
    os << name << "  [" << scenario.str() << "]\n";
    if (!description.empty()) os << description << "\n";
    if (space == CoeffSpace::correlator) {
        for (int x = 0; x < scenario.inputs_alice(); ++x) {
            os << " ";
            for (int y = 0; y < scenario.inputs_bob(); ++y)
                os << "\t" << rat_str(correlator_coeff(x, y));
            os << "\n";
        }
    } else {
        for (int x = 0; x < scenario.inputs_alice(); ++x)
            for (int y = 0; y < scenario.inputs_bob(); ++y)
                for (int a = 0; a < scenario.outputs_alice(x); ++a)
                    for (int b = 0; b < scenario.outputs_bob(y); ++b) {
                        const Rat& c = coeffs[scenario.index(x, y, a, b)];
                        if (c != 0)
                            os << " " << (c > 0 ? "+" : "") << rat_str(c) << " p(" << a << b << "|"
                               << x << y << ")";
                    }
        for (const MarginalTerm& t : marginals)
            os << " " << (t.coeff > 0 ? "+" : "") << rat_str(t.coeff) << " p_" << t.party << "("
               << t.output << "|" << t.input << ")";
        os << "\n";
    }
    os << (sense == BoundSense::upper ? " <= " : " >= ") << rat_str(bound) << "  (";
    switch (bound_kind) {
        case BoundKind::lhv: os << "classical bound"; break;
        case BoundKind::cod: os << "outcome-communication bound"; break;
        case BoundKind::mcpd: os << "message bound, d=" << bound_message_dim; break;
        case BoundKind::ns: os << "no-signalling bound"; break;
        case BoundKind::quantum: os << "quantum value"; break;
    }
    os << ")\n";
    return os.str();
}

namespace {

LinearFunctional prob_functional(std::string name, std::string desc, Scenario s,
                                 const std::vector<std::tuple<int, int, int, int, Rat>>& terms,
                                 std::vector<MarginalTerm> margs, Rat bound, BoundKind bk) {
    LinearFunctional f;
    f.name = std::move(name);
    f.description = std::move(desc);
    f.scenario = std::move(s);
    f.space = CoeffSpace::probability;
    f.coeffs.assign(f.scenario.size(), Rat(0));
    for (const auto& [a, b, x, y, c] : terms) f.coeffs[f.scenario.index(x, y, a, b)] += c;
    f.marginals = std::move(margs);
    f.bound = std::move(bound);
    f.bound_kind = bk;
    return f;
}

std::vector<LinearFunctional> build_catalog() {
    std::vector<LinearFunctional> cat;
    const Rat one(1);

    // CHSH, probability form over behavior coordinates.
    cat.push_back(prob_functional(
        "chsh", "CHSH in the probability form used for the entropy curves", Scenario({2, 2}, {2, 2}),
        {{0, 0, 0, 0, Rat(-1)},
         {0, 0, 0, 1, one},
         {0, 0, 1, 0, one},
         {0, 0, 1, 1, Rat(-1)},
         {0, 1, 0, 0, Rat(-1)},
         {1, 0, 0, 0, Rat(-1)}},
        {}, Rat(0), BoundKind::lhv));

    // CHSH in the Clauser-Horne style with explicit marginal terms.
    cat.push_back(prob_functional(
        "ch", "CHSH with explicit marginal terms (Clauser-Horne style)", Scenario({2, 2}, {2, 2}),
        {{0, 0, 0, 0, one}, {0, 0, 0, 1, one}, {0, 0, 1, 0, one}, {0, 0, 1, 1, Rat(-1)}},
        {{'A', 0, 0, Rat(-1)}, {'B', 0, 0, Rat(-1)}}, Rat(0), BoundKind::lhv));

    // I3322, probability form used for the entropy curves.
    cat.push_back(prob_functional(
        "i3322", "three-input two-output inequality, probability form",
        Scenario({2, 2, 2}, {2, 2, 2}),
        {{0, 0, 0, 0, Rat(-2)},
         {0, 0, 0, 2, one},
         {0, 0, 1, 0, one},
         {0, 0, 1, 1, one},
         {0, 0, 1, 2, Rat(-1)},
         {0, 0, 2, 0, one},
         {0, 0, 2, 1, Rat(-1)},
         {0, 1, 0, 0, Rat(-1)},
         {1, 0, 0, 0, Rat(-2)},
         {1, 0, 0, 1, Rat(-1)}},
        {}, Rat(0), BoundKind::lhv));

    // I3322 in the Collins-Gisin style with marginal terms.
    cat.push_back(prob_functional(
        "i3322-cg", "three-input two-output inequality with marginal terms (Collins-Gisin style)",
        Scenario({2, 2, 2}, {2, 2, 2}),
        {{0, 0, 0, 0, one},
         {0, 0, 0, 1, one},
         {0, 0, 0, 2, one},
         {0, 0, 1, 0, one},
         {0, 0, 1, 1, one},
         {0, 0, 1, 2, Rat(-1)},
         {0, 0, 2, 0, one},
         {0, 0, 2, 1, Rat(-1)}},
        {{'A', 0, 0, Rat(-2)}, {'A', 0, 1, Rat(-1)}, {'B', 0, 0, Rat(-1)}}, Rat(0), BoundKind::lhv));

    // I2233, probability form used for the entropy curves.
    cat.push_back(prob_functional(
        "i2233", "two-input three-output inequality, probability form", Scenario({3, 3}, {3, 3}),
        {{0, 0, 0, 0, Rat(-1)}, {0, 1, 0, 0, Rat(-1)}, {0, 1, 0, 1, one},  {0, 1, 1, 0, one},
         {0, 1, 1, 1, Rat(-1)}, {0, 2, 0, 0, Rat(-1)}, {1, 0, 0, 0, Rat(-1)}, {1, 0, 0, 1, one},
         {1, 0, 1, 0, one},     {1, 0, 1, 1, Rat(-1)}, {1, 1, 0, 0, Rat(-2)}, {1, 1, 0, 1, one},
         {1, 1, 1, 0, one},     {1, 1, 1, 1, Rat(-1)}, {1, 2, 0, 0, Rat(-1)}, {2, 0, 0, 0, Rat(-1)},
         {2, 1, 0, 0, Rat(-1)}},
        {}, Rat(0), BoundKind::lhv));

    cat.push_back(make_chained(3, ChainedVariant::canonical));
    cat.back().name = "chained3";

    // Party-symmetric relabeling of the n=3 chained inequality that stays
    // valid when one party's outcome is wired to the other's: obtained from
    // the canonical form by A0 -> -A0, A2 -> -A2, B1 -> -B1, B0 <-> B2.
    {
        LinearFunctional iab = make_chained(3, ChainedVariant::canonical)
                                   .negate_observable('A', 0)
                                   .negate_observable('A', 2)
                                   .negate_observable('B', 1)
                                   .swap_observables('B', 0, 2);
        iab.name = "iab";
        iab.description = "party-symmetric chained form, valid for outcome communication";
        iab.bound = 4;
        iab.bound_kind = BoundKind::cod;
        cat.push_back(std::move(iab));
    }

    // Integer staircase form of the n=3, d=2 message inequality.
    {
        LinearFunctional m332 = make_mnd(3, 2).scaled(Rat(6));
        m332.name = "m332";
        m332.description = "full-correlator inequality for three inputs and a binary message";
        cat.push_back(std::move(m332));
    }
    return cat;
}

}  // namespace

const std::vector<LinearFunctional>& catalog() {
    static const std::vector<LinearFunctional> cat = build_catalog();
    return cat;
}

const LinearFunctional& catalog_get(const std::string& name) {
    for (const LinearFunctional& f : catalog())
        if (f.name == name) return f;
    throw std::invalid_argument("unknown inequality: " + name);
}

LinearFunctional make_chained(int n, ChainedVariant variant) {
    if (n < 2) throw std::invalid_argument("chained inequality needs n >= 2");
    Scenario s(std::vector<int>(static_cast<std::size_t>(n), 2),
               std::vector<int>(static_cast<std::size_t>(n), 2));
    if (variant == ChainedVariant::canonical) {
        LinearFunctional f;
        f.name = "chained" + std::to_string(n);
        f.description = "chained correlator inequality, canonical form";
        f.scenario = s;
        f.space = CoeffSpace::correlator;
        f.coeffs.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), Rat(0));
        auto at = [&](int x, int y) -> Rat& {
            return f.coeffs[static_cast<std::size_t>(x) * static_cast<std::size_t>(n) +
                            static_cast<std::size_t>(y)];
        };
        for (int y = 0; y < n; ++y) {
            at(y, y) += 1;
            if (y + 1 < n)
                at(y + 1, y) += 1;
            else
                at(0, y) -= 1;  // wrap term enters negated
        }
        f.bound = 2 * n - 2;
        f.bound_kind = BoundKind::lhv;
        return f;
    }
    // cod_valid: bracket form over probabilities. Chain pairs (x,y), 0-based:
    // (0,0),(1,0),(1,1),(2,1),...,(n-1,n-1) ask for a != b, the wrap pair
    // (0,n-1) asks for a == b; then the first party's outputs are relabelled
    // on every second input (odd x here), flipping those terms.
    LinearFunctional f;
    f.name = "chained" + std::to_string(n) + "-cod";
    f.description = "chained bracket form, outputs relabelled on every second input";
    f.scenario = s;
    f.space = CoeffSpace::probability;
    f.coeffs.assign(s.size(), Rat(0));
    auto add_term = [&](int x, int y, bool want_equal) {
        if (x % 2 == 1) want_equal = !want_equal;  // relabelling a -> 1-a for odd x
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                if ((a == b) == want_equal) f.coeffs[s.index(x, y, a, b)] += 1;
    };
    for (int y = 0; y < n; ++y) {
        add_term(y, y, false);
        if (y + 1 < n) add_term(y + 1, y, false);
    }
    add_term(0, n - 1, true);
    f.bound = 1;
    f.sense = BoundSense::lower;
    f.bound_kind = BoundKind::cod;
    return f;
}

LinearFunctional make_mnd(int n, int d) {
    if (n < 2 || d < 1) throw std::invalid_argument("make_mnd: need n >= 2, d >= 1");
    LinearFunctional f;
    f.name = "m" + std::to_string(n) + std::to_string(d) + "2";
    f.description = "full-correlator staircase inequality for " + std::to_string(n) +
                    " inputs and a " + std::to_string(d) + "-symbol message";
    f.scenario = Scenario(std::vector<int>(static_cast<std::size_t>(n), 2),
                          std::vector<int>(static_cast<std::size_t>(n), 2));
    f.space = CoeffSpace::correlator;
    f.coeffs.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), Rat(0));
    auto at = [&](int x, int y) -> Rat& {
        return f.coeffs[static_cast<std::size_t>(x) * static_cast<std::size_t>(n) +
                        static_cast<std::size_t>(y)];
    };
    // Row 0: all ones. Row i >= 1: ones up to column n-i-1, then -1, then 0s.
    for (int y = 0; y < n; ++y) at(0, y) = 1;
    for (int x = 1; x < n; ++x) {
        for (int y = 0; y < n - x; ++y) at(x, y) = 1;
        at(x, n - x) = -1;
    }
    Rat norm = Rat(n * (n - 1) + d + d * d, 2);
    f.bound = 1;
    f.bound_kind = BoundKind::mcpd;
    f.bound_message_dim = d;
    for (Rat& c : f.coeffs) c /= norm;
    return f;
}

namespace {

// Extremum of sum over cells of the receiver's best response, for a fixed
// sender side. prob-form coefficient lookup via the functional's dense array.
struct CellOpt {
    Rat total;
    std::vector<int> receiver_table;
};

}  // namespace

ModelBoundResult model_bound(const LinearFunctional& f0, const ModelSpec& m, bool minimize) {
    LinearFunctional f = f0.space == CoeffSpace::correlator ? f0.to_probability_form() : f0;
    if (!f.marginals.empty())
        throw std::domain_error("model_bound: expand marginal terms first (expand_marginals)");
    if (f.scenario != m.scenario) throw std::invalid_argument("model_bound: scenario mismatch");
    const Scenario& s = m.scenario;
    const int na = s.inputs_alice(), nb = s.inputs_bob();
    auto coeff = [&](int x, int y, int a, int b) -> const Rat& {
        return f.coeffs[s.index(x, y, a, b)];
    };
    auto better = [&](const Rat& cand, const Rat& cur) { return minimize ? cand < cur : cand > cur; };

    std::optional<ModelBoundResult> best;
    auto consider = [&](const Rat& total, DeterministicStrategy st) {
        if (!best || better(total, best->bound)) best = ModelBoundResult{total, std::move(st)};
    };

    if (m.kind == ModelKind::cod_convex) {
        ModelBoundResult ab = model_bound(f0, ModelSpec::cod(s, Direction::a_to_b), minimize);
        ModelBoundResult ba = model_bound(f0, ModelSpec::cod(s, Direction::b_to_a), minimize);
        return better(ab.bound, ba.bound) ? ab : ba;
    }
    if (m.kind == ModelKind::cpd_two_way) {
        DeterministicStrategy st;
        st.kind = m.kind;
        st.alice.assign(static_cast<std::size_t>(na * nb), 0);
        st.bob.assign(static_cast<std::size_t>(na * nb), 0);
        Rat total = 0;
        for (int x = 0; x < na; ++x)
            for (int y = 0; y < nb; ++y) {
                Rat cell;
                bool first = true;
                int ba = 0, bb = 0;
                for (int a = 0; a < s.outputs_alice(x); ++a)
                    for (int b = 0; b < s.outputs_bob(y); ++b)
                        if (first || better(coeff(x, y, a, b), cell)) {
                            cell = coeff(x, y, a, b);
                            ba = a;
                            bb = b;
                            first = false;
                        }
                st.alice[static_cast<std::size_t>(x * nb + y)] = ba;
                st.bob[static_cast<std::size_t>(x * nb + y)] = bb;
                total += cell;
            }
        return {total, st};
    }

    // Swap roles so the sender is always "alice" in the loops below.
    if (m.kind != ModelKind::lhv && m.direction == Direction::b_to_a) {
        LinearFunctional fs = f;
        fs.scenario = s.swapped();
        fs.coeffs.assign(fs.scenario.size(), Rat(0));
        for (int x = 0; x < na; ++x)
            for (int y = 0; y < nb; ++y)
                for (int a = 0; a < s.outputs_alice(x); ++a)
                    for (int b = 0; b < s.outputs_bob(y); ++b)
                        fs.coeffs[fs.scenario.index(y, x, b, a)] = f.coeffs[s.index(x, y, a, b)];
        ModelSpec ms = m;
        ms.scenario = fs.scenario;
        ms.direction = Direction::a_to_b;
        ModelBoundResult r = model_bound(fs, ms, minimize);
        // Swap the witness's party roles back.
        std::swap(r.witness.alice, r.witness.bob);
        r.witness.direction = Direction::b_to_a;
        return r;
    }

    // Sender-side table enumeration, receiver optimized per context cell.
    std::vector<int> fa(static_cast<std::size_t>(na), 0);
    const int d = m.kind == ModelKind::mcpd_one_way ? m.message_dim : 1;
    std::vector<int> fm(static_cast<std::size_t>(na), 0);
    auto eval_sender = [&]() {
        // context of Bob's table: y only (lhv), (x,y) (cpd), (a,y) (cod), (m,y) (mcpd)
        int contexts = 1;
        switch (m.kind) {
            case ModelKind::lhv: contexts = 1; break;
            case ModelKind::cpd_one_way: contexts = na; break;
            case ModelKind::cod_one_way: contexts = s.alice_alphabet(); break;
            case ModelKind::mcpd_one_way: contexts = d; break;
            default: throw std::logic_error("unreachable");
        }
        std::vector<int> table(static_cast<std::size_t>(contexts * nb), 0);
        Rat total = 0;
        for (int ctx = 0; ctx < contexts; ++ctx)
            for (int y = 0; y < nb; ++y) {
                Rat cell;
                bool first = true;
                int bbest = 0;
                for (int b = 0; b < s.outputs_bob(y); ++b) {
                    Rat acc = 0;
                    for (int x = 0; x < na; ++x) {
                        bool in_ctx = true;
                        switch (m.kind) {
                            case ModelKind::lhv: in_ctx = true; break;
                            case ModelKind::cpd_one_way: in_ctx = (x == ctx); break;
                            case ModelKind::cod_one_way: in_ctx = (fa[static_cast<std::size_t>(x)] == ctx); break;
                            case ModelKind::mcpd_one_way: in_ctx = (fm[static_cast<std::size_t>(x)] == ctx); break;
                            default: break;
                        }
                        if (in_ctx) acc += coeff(x, y, fa[static_cast<std::size_t>(x)], b);
                    }
                    if (first || better(acc, cell)) {
                        cell = acc;
                        bbest = b;
                        first = false;
                    }
                }
                table[static_cast<std::size_t>(ctx * nb + y)] = bbest;
                total += cell;
            }
        DeterministicStrategy st;
        st.kind = m.kind;
        st.direction = Direction::a_to_b;
        st.alice = fa;
        if (m.kind == ModelKind::mcpd_one_way) st.message = fm;
        st.bob = std::move(table);
        consider(total, std::move(st));
    };

    // Odometer over sender tables (and message tables for mcpd).
    std::function<void(int)> loop_fm = [&](int x) {
        if (x == na) { eval_sender(); return; }
        for (int v = 0; v < d; ++v) {
            fm[static_cast<std::size_t>(x)] = v;
            loop_fm(x + 1);
        }
    };
    std::function<void(int)> loop_fa = [&](int x) {
        if (x == na) {
            if (m.kind == ModelKind::mcpd_one_way)
                loop_fm(0);
            else
                eval_sender();
            return;
        }
        for (int v = 0; v < s.outputs_alice(x); ++v) {
            fa[static_cast<std::size_t>(x)] = v;
            loop_fa(x + 1);
        }
    };
    loop_fa(0);
    return *best;
}

ModelBoundResult model_bound_enumerated(const LinearFunctional& f0, const ModelSpec& m,
                                        const Budget& budget, bool minimize) {
    LinearFunctional f = f0.space == CoeffSpace::correlator ? f0.to_probability_form() : f0;
    if (!f.marginals.empty())
        throw std::domain_error("model_bound: expand marginal terms first (expand_marginals)");
    std::vector<DeterministicStrategy> strategies = enumerate_strategies(m, budget);
    const Scenario& s = m.scenario;
    std::optional<ModelBoundResult> best;
    for (const DeterministicStrategy& st : strategies) {
        Rat v = 0;
        for (int x = 0; x < s.inputs_alice(); ++x)
            for (int y = 0; y < s.inputs_bob(); ++y) {
                auto [a, b] = st.outputs(s, x, y);
                v += f.coeffs[s.index(x, y, a, b)];
            }
        if (!best || (minimize ? v < best->bound : v > best->bound))
            best = ModelBoundResult{v, st};
    }
    if (!best) throw std::logic_error("empty strategy set");
    return *best;
}

Rat ns_maximum(const LinearFunctional& f0) {
    LinearFunctional f = f0.space == CoeffSpace::correlator ? f0.to_probability_form() : f0;
    if (!f.marginals.empty()) f = f.expand_marginals(0, 0);
    HPolytope h = ns_polytope(f.scenario);
    LinearProgram lp;
    lp.num_vars = static_cast<int>(f.scenario.size());
    lp.sense = Sense::maximize;
    lp.objective = f.coeffs;
    for (std::size_t i = 0; i < h.eq.size(); ++i) {
        std::vector<std::pair<int, Rat>> row;
        for (std::size_t j = 0; j < h.eq[i].size(); ++j)
            if (h.eq[i][j] != 0) row.emplace_back(static_cast<int>(j), h.eq[i][j]);
        lp.add_row(std::move(row), Rel::eq, h.eq_rhs[i]);
    }
    LpResult r = solve(lp);
    if (r.status != LpStatus::optimal) throw std::logic_error("ns_maximum: LP not optimal");
    return r.value;
}

double evaluate_on_correlators(const LinearFunctional& f,
                               const std::vector<std::vector<double>>& corr) {
    if (f.space != CoeffSpace::correlator)
        throw std::logic_error("evaluate_on_correlators needs a correlator functional");
    double v = 0;
    for (int x = 0; x < f.scenario.inputs_alice(); ++x)
        for (int y = 0; y < f.scenario.inputs_bob(); ++y)
            v += to_double(f.correlator_coeff(x, y)) * corr[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
    return v;
}

std::string functional_sparse_text(const LinearFunctional& f0) {
    LinearFunctional f = f0.space == CoeffSpace::correlator ? f0.to_probability_form() : f0;
    std::ostringstream os;
    for (std::size_t i = 0; i < f.coeffs.size(); ++i)
        if (f.coeffs[i] != 0) os << i << " " << rat_str(f.coeffs[i]) << "\n";
    return os.str();
}

}  // namespace bellcomm
