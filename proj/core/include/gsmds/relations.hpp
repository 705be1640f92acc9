#pragma once
// Eventuality extraction and typed relation inference over normalized
// premises, plus topic derivation.

#include <string>
#include <vector>

#include "gsmds/lexicon.hpp"
#include "gsmds/model.hpp"

namespace gsmds {

enum class EventualityKind { event, state, concept_ };

std::string eventuality_kind_name(EventualityKind k);

struct Eventuality {
    int premise_index = 0;
    EventualityKind kind = EventualityKind::event;
    std::string summary;       // head verb/noun phrase, short
    bool no_predicate = false; // premise had no identifiable verb
};

// Summary is object + participle of the head verb (+ weekday when the premise
// names one); stative premises summarize subject + predicate. Kind follows the
// tense class; verbless premises are flagged and classified as concept.
Eventuality infer_eventuality(const Premise& premise,
                              const MarkerLexicon& lexicon = MarkerLexicon::embedded());

// Attaches every premise j >= 2 with exactly one incoming edge. Rule order:
//   R1 background: stative/past-perfect clause with a contrast marker, a bare
//      past-perfect clause, or an explicit background adverbial
//      (previously / in the past / bare trailing "before"); attaches to the
//      nearest preceding active-eventive premise.
//   R2 elaboration: "while" clauses, or a premise restating a quantity of an
//      earlier premise (same kind and surface) without a new time marker.
//   R3 narration: sequential adverbial (then/next/after that/subsequently/
//      later) or a weekday directly following the chain tail's weekday.
//   R4 narration: default; the chain of actions continues.
// The query premise always attaches with narration to the chain tail.
// Narration/elaboration targets become the new chain tail; background targets
// do not.
std::vector<RelationEdge> infer_relations(const std::vector<Premise>& premises,
                                          const MarkerLexicon& lexicon = MarkerLexicon::embedded());

struct TopicDerivation {
    std::vector<Topic> topics;
    std::optional<TopicRelation> topic_relation;
};

// topic-a covers the main agent's action line; topic-b summarizes attached
// side material when present, or the second premise of a plain chain.
TopicDerivation derive_topics(const std::vector<Premise>& premises,
                              const std::vector<RelationEdge>& edges,
                              const MarkerLexicon& lexicon = MarkerLexicon::embedded());

}  // namespace gsmds
