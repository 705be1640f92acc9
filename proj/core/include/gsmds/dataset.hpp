#pragma once
// Problem dataset ingestion and writing. One JSON object per line with fields
//   id        unique string
//   question  full problem text including the final interrogative
//   answer    "N" or a GSM8K rationale ending "#### N"
//   solution  optional GSM8K calculator-annotated rationale; <<a*b=c>> spans
//             become the solution expression
//   solution_steps  optional array of explicit step strings; overrides
//             `solution` when present
// plus `provenance` and `parent` on perturbed datasets.
//
// Step string grammar: "LHS OP RHS = RESULT" where an operand is a number,
// "(a/b)" for fractions, "#k" for the result of step k, or is prefixed with
// "_" to pin it against value substitution (unit conversions, percent bases).

#include <string>
#include <vector>

#include "gsmds/lexicon.hpp"
#include "gsmds/model.hpp"

namespace gsmds {

struct dataset_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Body/question split of a full problem text: the question is the final
// sentence; a leading conditional inside an interrogative final sentence
// ("If the rink has 75 cars in total how many...") is promoted to a
// declarative body sentence.
struct BodyQuestion {
    std::string body;
    std::string question;
};
BodyQuestion split_body_question(const std::string& full_text);

// "#### 42" rationale convention accepted and stripped.
Rational parse_answer_string(const std::string& answer);

std::vector<SolutionStep> parse_solution_steps(const std::vector<std::string>& step_strings);

// Extracts <<...>> spans; operands matching an earlier step's result become
// step references, all other operands stay literal.
std::vector<SolutionStep> parse_gsm8k_solution(const std::string& rationale);

std::string render_solution_step(const SolutionStep& step);

Problem parse_problem_json_line(const std::string& line, int lineno);

// Throws dataset_error with the offending line number on any malformed line;
// also enforces the Problem invariants (non-empty body/question, solution
// chain evaluating to the gold answer, parent id on perturbed problems).
std::vector<Problem> load_problems_jsonl(const std::string& path);

// Written problems include provenance/parent when not original, the solution
// steps in explicit syntax, and a statement_premises count (query premise
// excluded).
void save_problems_jsonl(const std::string& path, const std::vector<Problem>& problems,
                         const MarkerLexicon& lexicon = MarkerLexicon::embedded());

// SHA-256 hex digest of a file's bytes; used to pin datasets in manifests.
std::string file_digest_hex(const std::string& path);

}  // namespace gsmds
