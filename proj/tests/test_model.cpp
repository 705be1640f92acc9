#include <algorithm>

#include "doctest.h"
#include "gsmds/model.hpp"
#include "testutil.hpp"

using namespace gsmds;

namespace {

DiscourseStructure kiwi_shape() {
    DiscourseStructure s;
    for (int i = 1; i <= 5; ++i) {
        Premise p;
        p.index = i;
        p.text = "P" + std::to_string(i);
        p.is_query = i == 5;
        s.premises.push_back(p);
    }
    s.edges = {{1, 2, Relation::narration},
               {2, 3, Relation::narration},
               {3, 4, Relation::background},
               {3, 5, Relation::narration}};
    s.topics = {{"topic-a", "a"}, {"topic-b", "b"}};
    s.topic_relation = TopicRelation{"topic-a", Relation::elaboration, "topic-b"};
    return s;
}

}  // namespace

TEST_CASE("validate_structure accepts the kiwi shape") {
    CHECK(validate_structure(kiwi_shape()).empty());
}

TEST_CASE("validate_structure accepts the smallest legal structure") {
    DiscourseStructure s;
    Premise p;
    p.index = 1;
    p.text = "only premise";
    p.is_query = true;
    s.premises.push_back(p);
    s.topics = {{"topic-a", "a"}};
    CHECK(validate_structure(s).empty());
}

TEST_CASE("validate_structure reports the smallest cycle") {
    DiscourseStructure s = kiwi_shape();
    s.premises.resize(2);
    s.edges = {{1, 2, Relation::narration}, {2, 1, Relation::narration}};
    auto diags = validate_structure(s);
    bool found_cycle = std::any_of(diags.begin(), diags.end(),
                                   [](const Diagnostic& d) { return d.invariant == "cycle"; });
    CHECK(found_cycle);
}

TEST_CASE("validate_structure reports branching narration and dangling edges") {
    DiscourseStructure s = kiwi_shape();
    s.edges.push_back({3, 2, Relation::narration});  // P3 already narrates to P5
    auto diags = validate_structure(s);
    CHECK(std::any_of(diags.begin(), diags.end(),
                      [](const Diagnostic& d) { return d.invariant == "narr_branch"; }));

    DiscourseStructure t = kiwi_shape();
    t.edges.push_back({9, 2, Relation::narration});
    diags = validate_structure(t);
    CHECK(std::any_of(diags.begin(), diags.end(),
                      [](const Diagnostic& d) { return d.invariant == "edge_endpoint"; }));

    DiscourseStructure u = kiwi_shape();
    u.edges.push_back({2, 2, Relation::elaboration});
    diags = validate_structure(u);
    CHECK(std::any_of(diags.begin(), diags.end(),
                      [](const Diagnostic& d) { return d.invariant == "edge_reflexive"; }));
}

TEST_CASE("validate_structure flags unattached premises and a non-root P1") {
    DiscourseStructure s = kiwi_shape();
    s.edges = {{1, 2, Relation::narration},
               {2, 3, Relation::narration},
               {3, 5, Relation::narration}};  // P4 unattached
    auto diags = validate_structure(s);
    CHECK(std::any_of(diags.begin(), diags.end(), [](const Diagnostic& d) {
        return d.invariant == "unattached_premise" && d.detail.find("P4") != std::string::npos;
    }));

    DiscourseStructure t = kiwi_shape();
    t.edges.push_back({4, 1, Relation::elaboration});
    diags = validate_structure(t);
    CHECK(std::any_of(diags.begin(), diags.end(),
                      [](const Diagnostic& d) { return d.invariant == "root_incoming"; }));
}

TEST_CASE("every valid structure has a topological order starting at P1") {
    testutil::StructureGenerator gen(2024);
    for (int iter = 0; iter < 200; ++iter) {
        DiscourseStructure s = gen.next();
        REQUIRE(validate_structure(s).empty());
        // Kahn order over all edges; premise 1 must be schedulable first.
        const int n = static_cast<int>(s.premises.size());
        std::vector<int> indeg(static_cast<std::size_t>(n) + 1, 0);
        for (const RelationEdge& e : s.edges) indeg[static_cast<std::size_t>(e.target)]++;
        CHECK(indeg[1] == 0);
        int scheduled = 0;
        std::vector<bool> done(static_cast<std::size_t>(n) + 1, false);
        for (int round = 0; round < n; ++round) {
            int pick = -1;
            for (int i = 1; i <= n; ++i) {
                if (!done[static_cast<std::size_t>(i)] && indeg[static_cast<std::size_t>(i)] == 0) {
                    pick = i;
                    break;
                }
            }
            REQUIRE(pick != -1);
            if (round == 0) CHECK(pick == 1);
            done[static_cast<std::size_t>(pick)] = true;
            ++scheduled;
            for (const RelationEdge& e : s.edges) {
                if (e.source == pick) indeg[static_cast<std::size_t>(e.target)]--;
            }
        }
        CHECK(scheduled == n);
    }
}

TEST_CASE("solution chains evaluate with step references") {
    std::vector<SolutionStep> steps;
    SolutionStep s1;
    s1.lhs.value = Rational(44);
    s1.op = ArithOp::mul;
    s1.rhs.value = Rational(2);
    s1.result = Rational(88);
    steps.push_back(s1);
    SolutionStep s2;
    s2.lhs.step_ref = 1;
    s2.op = ArithOp::add;
    s2.rhs.value = Rational(12);
    s2.result = Rational(100);
    steps.push_back(s2);
    CHECK(evaluate_solution(steps) == Rational(100));

    steps[1].lhs.step_ref = 7;
    CHECK_THROWS_AS(evaluate_solution(steps), UnboundOperand);
    CHECK_THROWS_AS(evaluate_solution({}), UnboundOperand);
}

TEST_CASE("relation aliases map to the canonical spellings") {
    CHECK(relation_from_name("narr") == Relation::narration);
    CHECK(relation_from_name("Bkg") == Relation::background);
    CHECK(relation_from_name("bckgnd") == Relation::background);
    CHECK(relation_from_name("bckgd") == Relation::background);
    CHECK(relation_from_name("Elab") == Relation::elaboration);
    CHECK_FALSE(relation_from_name("sequel").has_value());
    CHECK(relation_wire_name(Relation::background) == "bckgnd");
}
