#pragma once
// Full rule-based analysis: segment -> reorder -> relations -> topics.

#include <string>
#include <vector>

#include "gsmds/lexicon.hpp"
#include "gsmds/model.hpp"

namespace gsmds {

struct Analysis {
    DiscourseStructure structure;
    std::vector<std::size_t> permutation;  // normalized position -> segmented position
    std::vector<std::string> notes;
    std::vector<Diagnostic> diagnostics;  // from validate_structure; empty on success
};

Analysis analyze(const Problem& problem,
                 const MarkerLexicon& lexicon = MarkerLexicon::embedded());

}  // namespace gsmds
