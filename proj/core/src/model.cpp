#include "gsmds/model.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>
#include <unordered_set>

namespace gsmds {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

}  // namespace

char arith_op_char(ArithOp op) {
    switch (op) {
        case ArithOp::add: return '+';
        case ArithOp::sub: return '-';
        case ArithOp::mul: return '*';
        case ArithOp::div: return '/';
    }
    return '?';
}

std::optional<ArithOp> arith_op_from_char(char c) {
    switch (c) {
        case '+': return ArithOp::add;
        case '-': return ArithOp::sub;
        case '*':
        case 'x': return ArithOp::mul;
        case '/': return ArithOp::div;
        default: return std::nullopt;
    }
}

Rational evaluate_solution(const std::vector<SolutionStep>& steps) {
    std::vector<Rational> results;
    results.reserve(steps.size());
    auto resolve = [&](const SolutionOperand& o) -> Rational {
        if (o.step_ref) {
            int ref = *o.step_ref;
            if (ref < 1 || static_cast<std::size_t>(ref) > results.size()) {
                throw UnboundOperand("step reference #" + std::to_string(ref) + " out of range");
            }
            return results[static_cast<std::size_t>(ref - 1)];
        }
        return o.value;
    };
    for (const SolutionStep& step : steps) {
        Rational lhs = resolve(step.lhs);
        Rational rhs = resolve(step.rhs);
        Rational r;
        switch (step.op) {
            case ArithOp::add: r = lhs + rhs; break;
            case ArithOp::sub: r = lhs - rhs; break;
            case ArithOp::mul: r = lhs * rhs; break;
            case ArithOp::div:
                if (rhs.is_zero()) throw DivisionByZero("division by zero in solution step");
                r = lhs / rhs;
                break;
        }
        results.push_back(r);
    }
    if (results.empty()) throw UnboundOperand("empty solution chain");
    return results.back();
}

std::string provenance_name(Provenance p) {
    switch (p) {
        case Provenance::original: return "original";
        case Provenance::c_mod: return "c_mod";
        case Provenance::n_mod: return "n_mod";
        case Provenance::l_mod: return "l_mod";
    }
    return "original";
}

std::optional<Provenance> provenance_from_name(std::string_view name) {
    std::string n = lower(name);
    std::replace(n.begin(), n.end(), '-', '_');
    if (n == "original") return Provenance::original;
    if (n == "c_mod") return Provenance::c_mod;
    if (n == "n_mod") return Provenance::n_mod;
    if (n == "l_mod") return Provenance::l_mod;
    return std::nullopt;
}

std::string temporal_adverbial_name(TemporalAdverbial t) {
    switch (t) {
        case TemporalAdverbial::then: return "then";
        case TemporalAdverbial::next: return "next";
        case TemporalAdverbial::after_that: return "after_that";
        case TemporalAdverbial::subsequently: return "subsequently";
        case TemporalAdverbial::while_: return "while";
        case TemporalAdverbial::later: return "later";
        case TemporalAdverbial::before: return "before";
        case TemporalAdverbial::finally_: return "finally";
        case TemporalAdverbial::first: return "first";
        case TemporalAdverbial::initially: return "initially";
        case TemporalAdverbial::previously: return "previously";
        case TemporalAdverbial::in_the_past: return "in_the_past";
    }
    return "?";
}

std::string tense_class_name(TenseClass t) {
    switch (t) {
        case TenseClass::active_eventive: return "active_eventive";
        case TenseClass::stative: return "stative";
        case TenseClass::past_perfect: return "past_perfect";
    }
    return "?";
}

std::string quantity_kind_name(QuantityKind k) {
    switch (k) {
        case QuantityKind::count_or_magnitude: return "count_or_magnitude";
        case QuantityKind::multiplier: return "multiplier";
        case QuantityKind::fraction: return "fraction";
        case QuantityKind::percentage: return "percentage";
        case QuantityKind::ordinal_label: return "ordinal_label";
    }
    return "?";
}

std::string relation_wire_name(Relation r) {
    switch (r) {
        case Relation::narration: return "narr";
        case Relation::elaboration: return "elab";
        case Relation::background: return "bckgnd";
    }
    return "?";
}

std::optional<Relation> relation_from_name(std::string_view name) {
    std::string n = lower(name);
    if (n == "narr" || n == "narration") return Relation::narration;
    if (n == "elab" || n == "elaboration") return Relation::elaboration;
    if (n == "bckgnd" || n == "bckgd" || n == "bkg" || n == "background" || n == "bkgd") {
        return Relation::background;
    }
    return std::nullopt;
}

std::string perturbation_kind_name(PerturbationKind k) {
    switch (k) {
        case PerturbationKind::c_mod: return "c_mod";
        case PerturbationKind::n_mod: return "n_mod";
        case PerturbationKind::l_mod: return "l_mod";
    }
    return "?";
}

std::optional<PerturbationKind> perturbation_kind_from_name(std::string_view name) {
    std::string n = lower(name);
    std::replace(n.begin(), n.end(), '-', '_');
    if (n == "c_mod" || n == "cmod") return PerturbationKind::c_mod;
    if (n == "n_mod" || n == "nmod") return PerturbationKind::n_mod;
    if (n == "l_mod" || n == "lmod") return PerturbationKind::l_mod;
    return std::nullopt;
}

std::string eval_mode_name(EvalMode m) {
    return m == EvalMode::ds_plus ? "ds_plus" : "ds_minus";
}

std::optional<EvalMode> eval_mode_from_name(std::string_view name) {
    std::string n = lower(name);
    std::replace(n.begin(), n.end(), '-', '_');
    if (n == "ds_plus" || n == "ds+" || n == "dsplus") return EvalMode::ds_plus;
    if (n == "ds_minus" || n == "ds_" || n == "ds-" || n == "dsminus") return EvalMode::ds_minus;
    return std::nullopt;
}

bool structurally_equal(const DiscourseStructure& a, const DiscourseStructure& b) {
    if (a.topics != b.topics) return false;
    if (a.topic_relation.has_value() != b.topic_relation.has_value()) return false;
    if (a.topic_relation && *a.topic_relation != *b.topic_relation) return false;
    if (a.edges != b.edges) return false;
    if (a.premises.size() != b.premises.size()) return false;
    for (std::size_t i = 0; i < a.premises.size(); ++i) {
        if (a.premises[i].index != b.premises[i].index) return false;
        if (a.premises[i].text != b.premises[i].text) return false;
    }
    return true;
}

std::vector<Diagnostic> validate_structure(const DiscourseStructure& s) {
    std::vector<Diagnostic> out;
    const int n = static_cast<int>(s.premises.size());

    if (s.topics.empty() || s.topics.size() > 3) {
        out.push_back({"topic_count", "structure has " + std::to_string(s.topics.size()) +
                                          " topics, expected 1..3"});
    }
    for (std::size_t i = 0; i < s.premises.size(); ++i) {
        if (s.premises[i].index != static_cast<int>(i) + 1) {
            out.push_back({"premise_index",
                           "premise at position " + std::to_string(i + 1) + " carries index " +
                               std::to_string(s.premises[i].index)});
        }
    }

    auto edge_name = [](const RelationEdge& e) {
        return "P" + std::to_string(e.source) + "--" + relation_wire_name(e.relation) + "--P" +
               std::to_string(e.target);
    };

    bool edges_ok = true;
    for (const RelationEdge& e : s.edges) {
        if (e.source == e.target) {
            out.push_back({"edge_reflexive", edge_name(e)});
            edges_ok = false;
        }
        if (e.source < 1 || e.source > n || e.target < 1 || e.target > n) {
            out.push_back({"edge_endpoint", edge_name(e) + " references an undefined premise"});
            edges_ok = false;
        }
    }
    if (!edges_ok) return out;

    // Narration chain: no premise sources two narration edges with distinct
    // targets.
    std::unordered_map<int, int> narr_target;
    for (const RelationEdge& e : s.edges) {
        if (e.relation != Relation::narration) continue;
        auto [it, inserted] = narr_target.emplace(e.source, e.target);
        if (!inserted && it->second != e.target) {
            out.push_back({"narr_branch", "P" + std::to_string(e.source) +
                                              " sources narration edges to P" +
                                              std::to_string(it->second) + " and P" +
                                              std::to_string(e.target)});
        }
    }

    // Root and incoming-edge coverage.
    std::vector<int> incoming(static_cast<std::size_t>(n) + 1, 0);
    for (const RelationEdge& e : s.edges) incoming[static_cast<std::size_t>(e.target)]++;
    if (n >= 1 && incoming[1] > 0) {
        out.push_back({"root_incoming", "premise P1 has an incoming edge"});
    }
    for (int i = 2; i <= n; ++i) {
        if (incoming[static_cast<std::size_t>(i)] == 0) {
            out.push_back({"unattached_premise", "P" + std::to_string(i) + " has no incoming edge"});
        }
    }

    // Cycle detection (Kahn).
    std::vector<int> indeg(static_cast<std::size_t>(n) + 1, 0);
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n) + 1);
    for (const RelationEdge& e : s.edges) {
        adj[static_cast<std::size_t>(e.source)].push_back(e.target);
        indeg[static_cast<std::size_t>(e.target)]++;
    }
    std::vector<int> queue;
    for (int i = 1; i <= n; ++i) {
        if (indeg[static_cast<std::size_t>(i)] == 0) queue.push_back(i);
    }
    int visited = 0;
    while (!queue.empty()) {
        int v = queue.back();
        queue.pop_back();
        ++visited;
        for (int w : adj[static_cast<std::size_t>(v)]) {
            if (--indeg[static_cast<std::size_t>(w)] == 0) queue.push_back(w);
        }
    }
    if (visited != n) {
        std::string members;
        for (int i = 1; i <= n; ++i) {
            if (indeg[static_cast<std::size_t>(i)] > 0) {
                if (!members.empty()) members += ", ";
                members += "P" + std::to_string(i);
            }
        }
        out.push_back({"cycle", "edge graph contains a cycle through " + members});
    }
    return out;
}

}  // namespace gsmds
