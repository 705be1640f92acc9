#pragma once
// Shared domain types for the discourse pipeline. All types are plain values,
// immutable by convention after construction, and safe to move across threads.

#include <optional>
#include <string>
#include <vector>

#include "gsmds/rational.hpp"

namespace gsmds {

// ---------------------------------------------------------------------------
// Solution expressions

enum class ArithOp { add, sub, mul, div };

char arith_op_char(ArithOp op);
std::optional<ArithOp> arith_op_from_char(char c);

// One operand of a solution step. A step result is re-derived during gold
// recomputation; `pinned` operands (unit conversions, percent bases) are never
// substituted; `step_ref` points at an earlier step's result (1-based).
struct SolutionOperand {
    Rational value;
    bool pinned = false;
    std::optional<int> step_ref;
};

struct SolutionStep {
    SolutionOperand lhs;
    ArithOp op = ArithOp::add;
    SolutionOperand rhs;
    Rational result;
};

struct solution_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DivisionByZero : solution_error {
    using solution_error::solution_error;
};
struct UnboundOperand : solution_error {
    using solution_error::solution_error;
};

// Evaluates the chain with every operand taken at face value (step refs
// resolved). Returns the final step's result. Used to validate gold answers.
Rational evaluate_solution(const std::vector<SolutionStep>& steps);

// ---------------------------------------------------------------------------
// Problems and premises

enum class Provenance { original, c_mod, n_mod, l_mod };

std::string provenance_name(Provenance p);
std::optional<Provenance> provenance_from_name(std::string_view name);

struct Problem {
    std::string id;
    std::string body;      // statement sentences
    std::string question;  // final (usually interrogative) sentence
    Rational gold_answer;
    std::vector<SolutionStep> solution_expr;  // may be empty
    Provenance provenance = Provenance::original;
    std::string parent_id;  // non-empty iff provenance != original

    std::string full_text() const { return body + " " + question; }
};

enum class TemporalAdverbial {
    then,
    next,
    after_that,
    subsequently,
    while_,
    later,
    before,
    finally_,
    first,
    initially,
    previously,
    in_the_past,
};

std::string temporal_adverbial_name(TemporalAdverbial t);

enum class TenseClass { active_eventive, stative, past_perfect };

std::string tense_class_name(TenseClass t);

struct MarkerAnnotation {
    std::optional<TemporalAdverbial> temporal;
    std::optional<int> ordinal;  // from clause-initial "first/second/..."
    std::optional<int> day;      // Sunday=0 ... Saturday=6
    TenseClass tense = TenseClass::active_eventive;
    bool contrast = false;  // clause introduced by but/although

    bool operator==(const MarkerAnnotation&) const = default;
};

enum class QuantityKind { count_or_magnitude, multiplier, fraction, percentage, ordinal_label };

std::string quantity_kind_name(QuantityKind k);

struct QuantitySpan {
    std::size_t start = 0;  // character offsets into the premise text
    std::size_t end = 0;    // exclusive
    std::string surface;
    Rational value;
    QuantityKind kind = QuantityKind::count_or_magnitude;

    bool operator==(const QuantitySpan&) const = default;
};

struct Premise {
    int index = 0;  // 1-based position after segmentation
    std::string text;
    MarkerAnnotation markers;
    std::vector<QuantitySpan> quantities;
    bool is_query = false;
};

// ---------------------------------------------------------------------------
// Discourse structure

enum class Relation { narration, elaboration, background };

// Canonical wire spellings: narr / elab / bckgnd.
std::string relation_wire_name(Relation r);
// Accepts the canonical names plus the aliases the source material uses
// (Bkg, bkg, bckgd, background, ...). Case-insensitive.
std::optional<Relation> relation_from_name(std::string_view name);

struct RelationEdge {
    int source = 0;  // premise index
    int target = 0;
    Relation relation = Relation::narration;

    bool operator==(const RelationEdge&) const = default;
};

struct Topic {
    std::string label;  // "topic-a", "topic-b", ...
    std::string description;

    bool operator==(const Topic&) const = default;
};

struct TopicRelation {
    std::string from;  // topic label
    Relation relation = Relation::elaboration;
    std::string to;

    bool operator==(const TopicRelation&) const = default;
};

struct DiscourseStructure {
    std::vector<Topic> topics;  // 1..3 entries
    std::optional<TopicRelation> topic_relation;
    std::vector<Premise> premises;  // normalized order, index == position
    std::vector<RelationEdge> edges;
};

// Serialized-content equality: topics, topic relation, premise texts and
// edges. Marker and quantity annotations are derived data and not compared.
bool structurally_equal(const DiscourseStructure& a, const DiscourseStructure& b);

// One finding of validate_structure. `ok` runs never produce any.
struct Diagnostic {
    std::string invariant;  // short id of the violated invariant
    std::string detail;     // names the offending premise/edge
};

// Checks the structural invariants: edges reference existing premises and are
// non-reflexive, the edge graph is acyclic, premise 1 is the unique root,
// every other premise has an incoming edge, no premise sources two narration
// edges, and the topic count is within range. Returns an empty list iff all
// hold.
std::vector<Diagnostic> validate_structure(const DiscourseStructure& s);

// ---------------------------------------------------------------------------
// Perturbation specs

enum class PerturbationKind { c_mod, n_mod, l_mod };

std::string perturbation_kind_name(PerturbationKind k);
std::optional<PerturbationKind> perturbation_kind_from_name(std::string_view name);

struct LexiconEntry {
    std::string surface;
    std::string pos;  // free-form part-of-speech tag, may be empty
    std::string synonym;
};

struct PerturbationSpec {
    PerturbationKind kind = PerturbationKind::c_mod;
    // c_mod
    std::vector<std::pair<std::string, std::string>> entity_map;
    std::vector<std::pair<std::string, std::string>> action_map;
    std::vector<std::pair<std::string, std::string>> unit_map;
    // n_mod: uniform scale factor, or an explicit surface map
    std::optional<std::int64_t> scale_factor;
    bool allow_large_scale = false;  // lifts the default k <= 10 cap
    std::vector<std::pair<std::string, std::string>> value_map;
    // l_mod
    std::vector<LexiconEntry> lexicon;
};

// ---------------------------------------------------------------------------
// Evaluation records

enum class EvalMode { ds_plus, ds_minus };

std::string eval_mode_name(EvalMode m);
std::optional<EvalMode> eval_mode_from_name(std::string_view name);

struct ChatMessage {
    std::string role;  // system / user / assistant
    std::string content;

    bool operator==(const ChatMessage&) const = default;
};

struct EvalRecord {
    std::string problem_id;
    EvalMode mode = EvalMode::ds_minus;
    std::vector<ChatMessage> prompt;
    std::string completion;
    std::optional<Rational> extracted;
    bool correct = false;
    bool errored = false;
    std::string error;
    std::int64_t latency_ms = 0;
    std::int64_t prompt_tokens = 0;
    std::int64_t completion_tokens = 0;
};

}  // namespace gsmds
