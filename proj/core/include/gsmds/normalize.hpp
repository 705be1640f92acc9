#pragma once
// Canonical narrative ordering of premises and the main computation chain.

#include <vector>

#include "gsmds/lexicon.hpp"
#include "gsmds/model.hpp"

namespace gsmds {

struct normalize_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConflictingMarkers : normalize_error {
    using normalize_error::normalize_error;
};

struct ReorderResult {
    std::vector<Premise> premises;       // re-indexed 1..n
    std::vector<std::size_t> permutation;  // permutation[new_pos] = old_pos (0-based)
};

// Stable, content-keyed reordering:
//   - "first"/"initially" premises move to the front,
//   - duration-"before" flashbacks cluster directly after them,
//   - explicit ordinals sort among their own slots,
//   - weekday premises sort among their own slots with week unwrapping
//     (consecutive wraps like Saturday->Sunday continue the week; larger
//     backward jumps are treated as out-of-order and resorted; an explicit
//     "next week" forces a forward wrap),
//   - a "while X" premise moves directly before the premise that picks the
//     same anchor up with "after X",
//   - the query premise is always last.
// Unmarked premises keep their relative order. The result is a fixpoint:
// reorder(reorder(ps).premises) == reorder(ps).premises.
//
// Throws ConflictingMarkers when two premises claim "finally" (or
// "first"/"initially"), or an explicit ordinal value appears twice.
ReorderResult reorder(const std::vector<Premise>& premises,
                      const MarkerLexicon& lexicon = MarkerLexicon::embedded());

// Premise indices reachable from P1 over narration and elaboration edges, in
// ascending order. Background-only premises never appear.
std::vector<int> main_chain(const DiscourseStructure& s);

}  // namespace gsmds
