#include <algorithm>

#include "doctest.h"
#include "gsmds/normalize.hpp"
#include "gsmds/pipeline.hpp"
#include "gsmds/relations.hpp"
#include "gsmds/segmenter.hpp"
#include "testutil.hpp"

using namespace gsmds;

namespace {

Premise make_premise(int index, const std::string& text, bool query = false) {
    Premise p;
    p.index = index;
    p.text = text;
    p.markers = annotate_markers(text);
    p.quantities = extract_quantities(text);
    p.is_query = query;
    return p;
}

std::vector<RelationEdge> edges_for(const std::string& id) {
    return analyze(testutil::problem(id)).structure.edges;
}

}  // namespace

TEST_CASE("eventualities carry kind and a short summary") {
    Eventuality ev = infer_eventuality(make_premise(1, "Oliver picks 44 kiwis on Friday."));
    CHECK(ev.kind == EventualityKind::event);
    CHECK(ev.summary == "kiwis picked on Friday");

    ev = infer_eventuality(make_premise(4, "five of them were a bit smaller than average"));
    CHECK(ev.kind == EventualityKind::state);
    CHECK(ev.summary.find("smaller") != std::string::npos);

    ev = infer_eventuality(make_premise(1, "The shoe size of Lucy's brother is 80."));
    CHECK(ev.kind == EventualityKind::state);
    CHECK(ev.summary.find("shoe size is 80") != std::string::npos);
}

TEST_CASE("a verbless premise becomes a flagged concept") {
    Eventuality ev = infer_eventuality(make_premise(1, "A total of 7 red marbles."));
    CHECK(ev.kind == EventualityKind::concept_);
    CHECK(ev.no_predicate);
}

TEST_CASE("eventuality kind follows the tense class") {
    CHECK(infer_eventuality(make_premise(1, "He has 3 cats.")).kind == EventualityKind::state);
    CHECK(infer_eventuality(make_premise(1, "He had eaten before.")).kind ==
          EventualityKind::state);
    CHECK(infer_eventuality(make_premise(1, "He bought a hat.")).kind == EventualityKind::event);
}

TEST_CASE("kiwi relation edges match the worked example") {
    std::vector<RelationEdge> edges = edges_for("kiwi");
    std::vector<RelationEdge> expected = {{1, 2, Relation::narration},
                                          {2, 3, Relation::narration},
                                          {3, 4, Relation::background},
                                          {3, 5, Relation::narration}};
    CHECK(edges == expected);
}

TEST_CASE("thomas relation edges match the worked example after reordering") {
    std::vector<RelationEdge> edges = edges_for("thomas");
    std::vector<RelationEdge> expected = {{1, 2, Relation::elaboration},
                                          {2, 3, Relation::narration},
                                          {3, 4, Relation::narration},
                                          {4, 5, Relation::narration},
                                          {5, 6, Relation::narration}};
    CHECK(edges == expected);
}

TEST_CASE("single premise plus query falls back to narration") {
    std::vector<Premise> ps = {make_premise(1, "Ann bought 7 pears."),
                               make_premise(2, "Ann wants to know how many pears she has.", true)};
    std::vector<RelationEdge> edges = infer_relations(ps);
    REQUIRE(edges.size() == 1);
    CHECK(edges[0] == RelationEdge{1, 2, Relation::narration});
}

TEST_CASE("narration attaches to the chain tail, not a background side node") {
    // The premise after a background premise must attach to the premise the
    // background hangs off, exactly the kiwi P5 case.
    std::vector<Premise> ps = {
        make_premise(1, "He picked 10 apples."),
        make_premise(2, "but two of them were bruised and small."),
        make_premise(3, "Then he picked 4 pears."),
    };
    std::vector<RelationEdge> edges = infer_relations(ps);
    REQUIRE(edges.size() == 2);
    CHECK(edges[0] == RelationEdge{1, 2, Relation::background});
    CHECK(edges[1] == RelationEdge{1, 3, Relation::narration});
}

TEST_CASE("explicit background adverbials attach as background") {
    std::vector<Premise> ps = {
        make_premise(1, "He sold 5 hats."),
        make_premise(2, "Previously, he owned a small stall."),
        make_premise(3, "Then he sold 3 scarves."),
    };
    std::vector<RelationEdge> edges = infer_relations(ps);
    CHECK(edges[0] == RelationEdge{1, 2, Relation::background});
    CHECK(edges[1] == RelationEdge{1, 3, Relation::narration});

    ps[1] = make_premise(2, "He had bought the stall years ago.");
    edges = infer_relations(ps);
    CHECK(edges[0].relation == Relation::background);
}

TEST_CASE("a quantity restatement without a new time step is an elaboration") {
    std::vector<Premise> ps = {
        make_premise(1, "He bought 12 apples at the market."),
        make_premise(2, "The 12 apples cost 6 dollars in all."),
        make_premise(3, "Then he went home."),
    };
    std::vector<RelationEdge> edges = infer_relations(ps);
    CHECK(edges[0] == RelationEdge{1, 2, Relation::elaboration});
    // The elaboration target joins the chain.
    CHECK(edges[1] == RelationEdge{2, 3, Relation::narration});
}

TEST_CASE("inferred edges are deterministic") {
    const Problem& p = testutil::problem("marcus");
    CHECK(analyze(p).structure.edges == analyze(p).structure.edges);
}

TEST_CASE("every analyzed worked problem passes validation") {
    for (const Problem& p : testutil::worked_problems()) {
        Analysis a = analyze(p);
        CHECK_MESSAGE(a.diagnostics.empty(), "diagnostics for ", p.id);
    }
}

TEST_CASE("narration edges form a single path reaching the query premise") {
    for (const Problem& p : testutil::worked_problems()) {
        Analysis a = analyze(p);
        // Walk narration+elaboration edges from P1; the query index must be
        // reached and no premise may source two narration edges.
        std::vector<int> chain = main_chain(a.structure);
        REQUIRE(!chain.empty());
        CHECK(chain.front() == 1);
        CHECK(chain.back() == static_cast<int>(a.structure.premises.size()));
    }
}

TEST_CASE("inferred structures over random premise lists always validate") {
    testutil::PremiseListGenerator gen(60606);
    for (int iter = 0; iter < 300; ++iter) {
        std::vector<Premise> ps = gen.next();
        ReorderResult ordered = reorder(ps);
        DiscourseStructure s;
        s.premises = ordered.premises;
        s.edges = infer_relations(s.premises);
        TopicDerivation topics = derive_topics(s.premises, s.edges);
        s.topics = topics.topics;
        s.topic_relation = topics.topic_relation;
        auto diags = validate_structure(s);
        CHECK_MESSAGE(diags.empty(), "iteration ", iter, ": ",
                      diags.empty() ? "" : diags.front().invariant);
    }
}

TEST_CASE("topics: kiwi derives a side topic from the background premise") {
    Analysis a = analyze(testutil::problem("kiwi"));
    REQUIRE(a.structure.topics.size() == 2);
    CHECK(a.structure.topics[0].label == "topic-a");
    CHECK(a.structure.topics[1].label == "topic-b");
    REQUIRE(a.structure.topic_relation.has_value());
    CHECK(a.structure.topic_relation->relation == Relation::elaboration);
    // Side topic mentions the day context of its attachment point.
    CHECK(a.structure.topics[1].description.find("Sunday") != std::string::npos);
    CHECK(a.structure.topics[0].description.find("Oliver") != std::string::npos);
}

TEST_CASE("topics: a pure narration chain still gets a second topic") {
    Analysis a = analyze(testutil::problem("larry"));
    CHECK(a.structure.topics.size() == 2);
    CHECK(a.structure.topic_relation.has_value());
}

TEST_CASE("topics: single-premise problems get one topic and no relation") {
    std::vector<Premise> ps = {make_premise(1, "Ann bought 7 pears.", true)};
    TopicDerivation topics = derive_topics(ps, {});
    CHECK(topics.topics.size() == 1);
    CHECK_FALSE(topics.topic_relation.has_value());
}
