#pragma once
// Splits problem text into premises, annotates temporal markers, tense class
// and weekday mentions, and extracts quantity spans.

#include <string>
#include <vector>

#include "gsmds/lexicon.hpp"
#include "gsmds/model.hpp"

namespace gsmds {

struct segment_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EmptyBody : segment_error {
    using segment_error::segment_error;
};

// All lexicon hits for one clause. Pure function of the text.
MarkerAnnotation annotate_markers(std::string_view premise_text,
                                  const MarkerLexicon& lexicon = MarkerLexicon::embedded());

// Digits, decimals, simple fractions, percentages, multiplier words and
// "N times" patterns. Spans never overlap and are sorted by start offset.
std::vector<QuantitySpan> extract_quantities(std::string_view text,
                                             const MarkerLexicon& lexicon = MarkerLexicon::embedded());

struct SegmentResult {
    std::vector<Premise> premises;
    std::vector<std::string> notes;  // e.g. number-like words left unextracted
};

// Sentence-level premises over the body, with a clause split at a coordinating
// ", but"/", and" boundary when the two conjuncts disagree in tense class.
// The final premise is the query: the question rephrased as a declarative
// ("X wants to know ...") when interrogative, verbatim otherwise.
SegmentResult segment(const Problem& problem,
                      const MarkerLexicon& lexicon = MarkerLexicon::embedded());

// First capitalized token of the text that is not an article, pronoun,
// adverbial, weekday or month. Empty when none exists.
std::string detect_agent(std::string_view text,
                         const MarkerLexicon& lexicon = MarkerLexicon::embedded());

// Internals exposed for the relation rules and tests.
struct TenseAnalysis {
    TenseClass tense = TenseClass::active_eventive;
    std::string head_verb;  // empty when no verb was found
    bool has_verb = false;
};
TenseAnalysis classify_tense(std::string_view clause, const MarkerLexicon& lexicon);

}  // namespace gsmds
