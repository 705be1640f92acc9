#include "gsmds/pipeline.hpp"

#include "gsmds/normalize.hpp"
#include "gsmds/relations.hpp"
#include "gsmds/segmenter.hpp"

namespace gsmds {

Analysis analyze(const Problem& problem, const MarkerLexicon& lexicon) {
    Analysis out;
    SegmentResult seg = segment(problem, lexicon);
    out.notes = seg.notes;

    ReorderResult ordered = reorder(seg.premises, lexicon);
    out.permutation = ordered.permutation;

    out.structure.premises = std::move(ordered.premises);
    out.structure.edges = infer_relations(out.structure.premises, lexicon);

    TopicDerivation topics = derive_topics(out.structure.premises, out.structure.edges, lexicon);
    out.structure.topics = std::move(topics.topics);
    out.structure.topic_relation = topics.topic_relation;

    out.diagnostics = validate_structure(out.structure);
    return out;
}

}  // namespace gsmds
