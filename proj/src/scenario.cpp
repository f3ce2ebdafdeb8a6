#include "bellcomm/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>
#include <sstream>

namespace bellcomm {

Scenario::Scenario(std::vector<int> outputs_alice, std::vector<int> outputs_bob)
    : out_a_(std::move(outputs_alice)), out_b_(std::move(outputs_bob)) {
    if (out_a_.empty() || out_b_.empty())
        throw std::invalid_argument("scenario needs at least one input per party");
    for (int o : out_a_)
        if (o < 1) throw std::invalid_argument("output cardinalities must be >= 1");
    for (int o : out_b_)
        if (o < 1) throw std::invalid_argument("output cardinalities must be >= 1");
    offsets_.reserve(out_a_.size() * out_b_.size());
    std::size_t off = 0;
    for (int oa : out_a_)
        for (int ob : out_b_) {
            offsets_.push_back(off);
            off += static_cast<std::size_t>(oa) * static_cast<std::size_t>(ob);
        }
    size_ = off;
    alpha_a_ = *std::max_element(out_a_.begin(), out_a_.end());
    alpha_b_ = *std::max_element(out_b_.begin(), out_b_.end());
}

bool Scenario::all_binary() const {
    return std::all_of(out_a_.begin(), out_a_.end(), [](int o) { return o == 2; }) &&
           std::all_of(out_b_.begin(), out_b_.end(), [](int o) { return o == 2; });
}

std::size_t Scenario::block_offset(int x, int y) const {
    if (x < 0 || x >= inputs_alice() || y < 0 || y >= inputs_bob())
        throw std::out_of_range("input index out of range");
    return offsets_[static_cast<std::size_t>(x) * static_cast<std::size_t>(inputs_bob()) +
                    static_cast<std::size_t>(y)];
}

std::size_t Scenario::block_size(int x, int y) const {
    return static_cast<std::size_t>(outputs_alice(x)) * static_cast<std::size_t>(outputs_bob(y));
}

std::size_t Scenario::index(int x, int y, int a, int b) const {
    if (a < 0 || a >= outputs_alice(x) || b < 0 || b >= outputs_bob(y))
        throw std::out_of_range("output index out of range");
    return block_offset(x, y) + static_cast<std::size_t>(a) * static_cast<std::size_t>(outputs_bob(y)) +
           static_cast<std::size_t>(b);
}

std::string Scenario::str() const {
    std::ostringstream os;
    os << "[(";
    for (std::size_t i = 0; i < out_a_.size(); ++i) os << (i ? "," : "") << out_a_[i];
    os << ")(";
    for (std::size_t i = 0; i < out_b_.size(); ++i) os << (i ? "," : "") << out_b_[i];
    os << ")]";
    return os.str();
}

Scenario Scenario::parse(const std::string& text) {
    std::vector<std::vector<int>> groups;
    std::size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    skip_ws();
    if (i >= text.size() || text[i] != '[') throw std::invalid_argument("scenario must start with '['");
    ++i;
    while (true) {
        skip_ws();
        if (i < text.size() && text[i] == ']') { ++i; break; }
        if (i >= text.size() || text[i] != '(') throw std::invalid_argument("expected '(' in scenario");
        ++i;
        std::vector<int> group;
        while (true) {
            skip_ws();
            if (i < text.size() && text[i] == ')') { ++i; break; }
            if (i < text.size() && text[i] == ',') { ++i; continue; }
            if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
                throw std::invalid_argument("expected cardinality in scenario");
            int v = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
                v = v * 10 + (text[i++] - '0');
            group.push_back(v);
        }
        groups.push_back(std::move(group));
    }
    if (groups.size() != 2) throw std::invalid_argument("scenario needs exactly two parties");
    return Scenario(groups[0], groups[1]);
}

Behavior::Behavior(Scenario scenario, std::vector<Rat> probs)
    : scenario_(std::move(scenario)), probs_(std::move(probs)) {
    if (probs_.size() != scenario_.size())
        throw std::invalid_argument("behavior vector length " + std::to_string(probs_.size()) +
                                    " does not match scenario size " + std::to_string(scenario_.size()));
}

ValidityReport Behavior::validate() const {
    ValidityReport rep;
    for (int x = 0; x < scenario_.inputs_alice(); ++x)
        for (int y = 0; y < scenario_.inputs_bob(); ++y) {
            Rat sum = 0;
            bool range_ok = true;
            for (int a = 0; a < scenario_.outputs_alice(x); ++a)
                for (int b = 0; b < scenario_.outputs_bob(y); ++b) {
                    const Rat& p = at(x, y, a, b);
                    if (p < 0 || p > 1) {
                        rep.ok = false;
                        range_ok = false;
                        rep.issues.push_back({ValidityIssue::Kind::out_of_range_entry, x, y,
                                              "p(" + std::to_string(a) + "," + std::to_string(b) +
                                                  "|" + std::to_string(x) + "," + std::to_string(y) +
                                                  ") = " + rat_str(p)});
                    }
                    sum += p;
                }
            if (sum != 1) {
                rep.ok = false;
                rep.issues.push_back({ValidityIssue::Kind::block_not_normalized, x, y,
                                      "block (" + std::to_string(x) + "," + std::to_string(y) +
                                          ") sums to " + rat_str(sum)});
            }
            (void)range_ok;
        }
    return rep;
}

std::string NsViolation::str() const {
    std::ostringstream os;
    if (party == 'A')
        os << "p(a=" << output << "|x=" << input << ") differs between y=" << far_input_1 << " ("
           << rat_str(lhs) << ") and y=" << far_input_2 << " (" << rat_str(rhs) << ")";
    else
        os << "p(b=" << output << "|y=" << input << ") differs between x=" << far_input_1 << " ("
           << rat_str(lhs) << ") and x=" << far_input_2 << " (" << rat_str(rhs) << ")";
    return os.str();
}

NsReport Behavior::no_signalling() const {
    NsReport rep;
    const Scenario& s = scenario_;
    for (int x = 0; x < s.inputs_alice(); ++x)
        for (int a = 0; a < s.outputs_alice(x); ++a) {
            Rat ref = alice_marginal(a, x, 0);
            for (int y = 1; y < s.inputs_bob(); ++y) {
                Rat m = alice_marginal(a, x, y);
                if (m != ref) {
                    rep.ok = false;
                    rep.violations.push_back({'A', a, x, 0, y, ref, m});
                }
            }
        }
    for (int y = 0; y < s.inputs_bob(); ++y)
        for (int b = 0; b < s.outputs_bob(y); ++b) {
            Rat ref = bob_marginal(b, y, 0);
            for (int x = 1; x < s.inputs_alice(); ++x) {
                Rat m = bob_marginal(b, y, x);
                if (m != ref) {
                    rep.ok = false;
                    rep.violations.push_back({'B', b, y, 0, x, ref, m});
                }
            }
        }
    return rep;
}

Rat Behavior::alice_marginal(int a, int x, int y_ref) const {
    Rat sum = 0;
    for (int b = 0; b < scenario_.outputs_bob(y_ref); ++b) sum += at(x, y_ref, a, b);
    return sum;
}

Rat Behavior::bob_marginal(int b, int y, int x_ref) const {
    Rat sum = 0;
    for (int a = 0; a < scenario_.outputs_alice(x_ref); ++a) sum += at(x_ref, y, a, b);
    return sum;
}

Rat Behavior::correlator(int x, int y) const {
    if (scenario_.outputs_alice(x) != 2 || scenario_.outputs_bob(y) != 2)
        throw std::domain_error("correlator requires binary outputs at the given inputs");
    Rat sum = 0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            if ((a + b) % 2 == 0)
                sum += at(x, y, a, b);
            else
                sum -= at(x, y, a, b);
        }
    return sum;
}

namespace {
void check_perm(const std::vector<int>& perm, int n) {
    if (static_cast<int>(perm.size()) != n) throw std::invalid_argument("permutation size mismatch");
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int v : perm) {
        if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)])
            throw std::invalid_argument("not a permutation");
        seen[static_cast<std::size_t>(v)] = true;
    }
}
}  // namespace

Behavior Behavior::permute_alice_inputs(const std::vector<int>& perm) const {
    const Scenario& s = scenario_;
    check_perm(perm, s.inputs_alice());
    std::vector<int> new_out_a(static_cast<std::size_t>(s.inputs_alice()));
    for (int x = 0; x < s.inputs_alice(); ++x) new_out_a[static_cast<std::size_t>(x)] = s.outputs_alice(perm[static_cast<std::size_t>(x)]);
    std::vector<int> out_b(static_cast<std::size_t>(s.inputs_bob()));
    for (int y = 0; y < s.inputs_bob(); ++y) out_b[static_cast<std::size_t>(y)] = s.outputs_bob(y);
    Scenario ns(new_out_a, out_b);
    std::vector<Rat> probs(ns.size());
    for (int x = 0; x < ns.inputs_alice(); ++x)
        for (int y = 0; y < ns.inputs_bob(); ++y)
            for (int a = 0; a < ns.outputs_alice(x); ++a)
                for (int b = 0; b < ns.outputs_bob(y); ++b)
                    probs[ns.index(x, y, a, b)] = at(perm[static_cast<std::size_t>(x)], y, a, b);
    return Behavior(ns, std::move(probs));
}

Behavior Behavior::permute_bob_inputs(const std::vector<int>& perm) const {
    return swap_parties().permute_alice_inputs(perm).swap_parties();
}

Behavior Behavior::relabel_alice_outputs(int x, const std::vector<int>& perm) const {
    const Scenario& s = scenario_;
    check_perm(perm, s.outputs_alice(x));
    std::vector<Rat> probs = probs_;
    for (int y = 0; y < s.inputs_bob(); ++y)
        for (int a = 0; a < s.outputs_alice(x); ++a)
            for (int b = 0; b < s.outputs_bob(y); ++b)
                probs[s.index(x, y, a, b)] = at(x, y, perm[static_cast<std::size_t>(a)], b);
    return Behavior(s, std::move(probs));
}

Behavior Behavior::relabel_bob_outputs(int y, const std::vector<int>& perm) const {
    return swap_parties().relabel_alice_outputs(y, perm).swap_parties();
}

Behavior Behavior::swap_parties() const {
    Scenario ns = scenario_.swapped();
    std::vector<Rat> probs(ns.size());
    for (int x = 0; x < scenario_.inputs_alice(); ++x)
        for (int y = 0; y < scenario_.inputs_bob(); ++y)
            for (int a = 0; a < scenario_.outputs_alice(x); ++a)
                for (int b = 0; b < scenario_.outputs_bob(y); ++b)
                    probs[ns.index(y, x, b, a)] = at(x, y, a, b);
    return Behavior(ns, std::move(probs));
}

void Behavior::write(std::ostream& os) const {
    os << "scenario: " << scenario_.str() << "\n";
    for (int x = 0; x < scenario_.inputs_alice(); ++x)
        for (int y = 0; y < scenario_.inputs_bob(); ++y)
            for (int a = 0; a < scenario_.outputs_alice(x); ++a)
                for (int b = 0; b < scenario_.outputs_bob(y); ++b) {
                    const Rat& p = at(x, y, a, b);
                    if (p != 0) os << x << " " << y << " " << a << " " << b << " " << rat_str(p) << "\n";
                }
}

Behavior Behavior::read(std::istream& is) {
    std::string line;
    std::optional<Scenario> scen;
    std::vector<Rat> probs;
    while (std::getline(is, line)) {
        std::size_t h = line.find('#');
        if (h != std::string::npos) line = line.substr(0, h);
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (!scen) {
            std::size_t colon = line.find(':');
            if (colon == std::string::npos || line.substr(first, colon - first) != "scenario")
                throw std::invalid_argument("behavior file must start with a 'scenario:' header");
            scen = Scenario::parse(line.substr(colon + 1));
            probs.assign(scen->size(), Rat(0));
            continue;
        }
        std::istringstream ls(line);
        int x, y, a, b;
        std::string val;
        if (!(ls >> x >> y >> a >> b >> val))
            throw std::invalid_argument("malformed behavior entry: " + line);
        probs.at(scen->index(x, y, a, b)) = parse_rational(val);
    }
    if (!scen) throw std::invalid_argument("behavior file has no scenario header");
    return Behavior(*scen, std::move(probs));
}

std::string Behavior::to_text() const {
    std::ostringstream os;
    write(os);
    return os.str();
}

Behavior Behavior::from_text(const std::string& text) {
    std::istringstream is(text);
    return read(is);
}

Behavior mix(const Behavior& b1, const Behavior& b2, const Rat& w) {
    if (b1.scenario() != b2.scenario()) throw std::invalid_argument("mix: scenario mismatch");
    if (w < 0 || w > 1) throw std::invalid_argument("mix: weight outside [0,1]");
    std::vector<Rat> probs(b1.scenario().size());
    for (std::size_t i = 0; i < probs.size(); ++i)
        probs[i] = w * b1.probs()[i] + (1 - w) * b2.probs()[i];
    return Behavior(b1.scenario(), std::move(probs));
}

Behavior uniform_behavior(const Scenario& s) {
    std::vector<Rat> probs(s.size());
    for (int x = 0; x < s.inputs_alice(); ++x)
        for (int y = 0; y < s.inputs_bob(); ++y) {
            Rat p(1, static_cast<long>(s.outputs_alice(x)) * s.outputs_bob(y));
            for (int a = 0; a < s.outputs_alice(x); ++a)
                for (int b = 0; b < s.outputs_bob(y); ++b) probs[s.index(x, y, a, b)] = p;
        }
    return Behavior(s, std::move(probs));
}

Behavior make_pr_box() {
    Scenario s({2, 2}, {2, 2});
    std::vector<Rat> probs(s.size(), Rat(0));
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    if (((a + b) % 2) == (x * y)) probs[s.index(x, y, a, b)] = Rat(1, 2);
    return Behavior(s, std::move(probs));
}

Behavior make_i3322_pr(const Rat& v) {
    if (v < 0 || v > 1) throw std::invalid_argument("mixing weight outside [0,1]");
    Scenario s({2, 2, 2}, {2, 2, 2});
    std::vector<Rat> pr(s.size(), Rat(0));
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) {
            int parity = (x + y == 3) ? 1 : 0;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    if ((a + b) % 2 == parity) pr[s.index(x, y, a, b)] = Rat(1, 2);
        }
    return mix(Behavior(s, std::move(pr)), uniform_behavior(s), v);
}

Behavior make_vertex_333_32() {
    Scenario s({3, 3, 3}, {3, 2});
    std::vector<Rat> p(s.size(), Rat(0));
    const Rat h(1, 2);
    // x = 0: a = 2 always, b uniform on {1,2} (y=0) and {0,1} (y=1).
    p[s.index(0, 0, 2, 1)] = h;
    p[s.index(0, 0, 2, 2)] = h;
    p[s.index(0, 1, 2, 0)] = h;
    p[s.index(0, 1, 2, 1)] = h;
    // x = 1
    p[s.index(1, 0, 1, 2)] = h;
    p[s.index(1, 0, 2, 1)] = h;
    p[s.index(1, 1, 1, 1)] = h;
    p[s.index(1, 1, 2, 0)] = h;
    // x = 2
    p[s.index(2, 0, 1, 2)] = h;
    p[s.index(2, 0, 2, 1)] = h;
    p[s.index(2, 1, 1, 0)] = h;
    p[s.index(2, 1, 2, 1)] = h;
    return Behavior(s, std::move(p));
}

std::string behavior_table_text(const Behavior& b) {
    const Scenario& s = b.scenario();
    std::ostringstream os;
    for (int x = 0; x < s.inputs_alice(); ++x) {
        for (int y = 0; y < s.inputs_bob(); ++y) {
            os << "block x=" << x << " y=" << y << "\n";
            for (int a = 0; a < s.outputs_alice(x); ++a) {
                for (int bb = 0; bb < s.outputs_bob(y); ++bb)
                    os << (bb ? "\t" : "  ") << rat_str(b.at(x, y, a, bb));
                os << "\n";
            }
        }
    }
    return os.str();
}

}  // namespace bellcomm
