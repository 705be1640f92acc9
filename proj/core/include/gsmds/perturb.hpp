#pragma once
// Out-of-distribution problem variants: contextual (C-MOD), numerical (N-MOD)
// and lexical (L-MOD) rewrites with validation and gold-answer recomputation.

#include <string>
#include <vector>

#include "gsmds/lexicon.hpp"
#include "gsmds/model.hpp"

namespace gsmds {

struct perturb_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct OverlapViolation : perturb_error {
    using perturb_error::perturb_error;
};
struct NumberTouched : perturb_error {
    using perturb_error::perturb_error;
};
struct NonIntegerResult : perturb_error {
    using perturb_error::perturb_error;
};
struct MissingSolution : perturb_error {
    using perturb_error::perturb_error;
};

// TOML-like spec file: optional top-level "kind = ..." and "scale_factor = k"
// lines plus [entity_map] / [action_map] / [unit_map] / [value_map] sections
// of "key = value" lines and a [lexicon] section of "surface = synonym | pos"
// lines. '#' starts a comment.
PerturbationSpec parse_perturbation_spec_text(const std::string& text);
PerturbationSpec load_perturbation_spec(const std::string& path);

struct PerturbResult {
    Problem problem;
    std::vector<std::string> warnings;      // e.g. unmapped capitalized entities
    std::vector<std::string> replacements;  // "old -> new" summary lines
};

// Whole-word, case-preserving replacement of entities/actions/units. Targets
// must not occur in the source text (OverlapViolation otherwise); quantity
// surfaces and the gold answer are unchanged.
PerturbResult apply_cmod(const Problem& p, const PerturbationSpec& spec,
                         const MarkerLexicon& lexicon = MarkerLexicon::embedded());

// Uniform mode multiplies every count/magnitude quantity by the scale factor;
// multipliers, fractions and percentages are preserved verbatim. Explicit
// mode replaces the mapped numeric surfaces. The gold answer is recomputed
// over the solution chain.
PerturbResult apply_nmod(const Problem& p, const PerturbationSpec& spec,
                         const MarkerLexicon& lexicon = MarkerLexicon::embedded());

// Synonym substitution with simple -s/-ed/-ing agreement. Numbers, entity
// names and weekday names are never substituted; any change to a quantity
// surface is a hard NumberTouched failure.
PerturbResult apply_lmod(const Problem& p, const PerturbationSpec& spec,
                         const MarkerLexicon& lexicon = MarkerLexicon::embedded());

// Re-evaluates the step chain with substituted leaf values (pinned operands
// and step references excluded) and returns the final result.
Rational recompute_gold(const std::vector<SolutionStep>& expr,
                        const std::vector<std::pair<Rational, Rational>>& substitution);

// The substituted chain itself (same substitution semantics, results
// re-derived). Used to carry a valid solution expression on N-MOD output.
std::vector<SolutionStep> substitute_solution(
    const std::vector<SolutionStep>& expr,
    const std::vector<std::pair<Rational, Rational>>& substitution);

}  // namespace gsmds
