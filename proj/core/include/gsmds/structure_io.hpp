#pragma once
// Text wire format for discourse structures, prompt assembly for the three
// prompt modes, and final-answer extraction from model completions.

#include <optional>
#include <string>
#include <vector>

#include "gsmds/model.hpp"

namespace gsmds {

struct structure_io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct MalformedBlock : structure_io_error {
    using structure_io_error::structure_io_error;
};
struct UnknownRelation : structure_io_error {
    using structure_io_error::structure_io_error;
};
struct DanglingPremise : structure_io_error {
    using structure_io_error::structure_io_error;
};
struct MissingStructure : structure_io_error {
    using structure_io_error::structure_io_error;
};

// Canonical block:
//   <structure>
//   Topics
//   [topic-a]: ...
//   Relationships          (omitted when there is no topic relation)
//   t1--elab--t2
//   Premises
//   P1: ...
//   Narrative Structure
//   P1--narr--P2
//   </structure>
// Lines are newline-separated with no trailing whitespace and no trailing
// newline.
std::string serialize_structure(const DiscourseStructure& s);

// Inverse of serialize_structure, tolerant of header case and colon
// variation, wrapped lines, and the Bkg/bkg/bckgnd relation spellings.
// Throws MalformedBlock / UnknownRelation / DanglingPremise.
DiscourseStructure parse_structure(std::string_view text);

enum class PromptMode { structure_gen, answer_ds, answer_plain };

std::optional<PromptMode> prompt_mode_from_name(std::string_view name);
std::string prompt_mode_name(PromptMode m);

struct Exemplar {
    std::string question;
    std::string structure;  // serialized block; empty for plain exemplars
    std::string answer;
};

// System prompts. The structure-generation and structured-answer prompts ship
// embedded; the plain mode uses a minimal step-by-step instruction.
const std::string& structure_gen_system_prompt();
const std::string& answer_ds_system_prompt();
const std::string& answer_plain_system_prompt();

// Four exemplars reconstructed from worked examples; further slots are
// user-suppliable via JSONL (fields question / structure / answer).
const std::vector<Exemplar>& built_in_exemplars();
std::vector<Exemplar> load_exemplars_jsonl(const std::string& path);
void save_exemplars_jsonl(const std::string& path, const std::vector<Exemplar>& exemplars);

// Builds the chat message sequence for the given mode; every exemplar becomes
// one user/assistant turn pair, the target problem is the final user turn.
// answer_ds requires a structure (MissingStructure otherwise) and appends its
// serialized block to the final user turn.
std::vector<ChatMessage> assemble_prompt(const Problem& problem,
                                         const std::optional<DiscourseStructure>& structure,
                                         PromptMode mode,
                                         const std::vector<Exemplar>& exemplars);

// First matching strategy wins:
//   1. last number inside <answer>...</answer>,
//   2. first number after the last "final answer" marker line,
//   3. last number in the completion.
// Denomination patterns ("... 240 5 dollar bills") never count as the answer
// number; percent signs and thousands separators are stripped.
std::optional<Rational> extract_answer(std::string_view completion);

}  // namespace gsmds
