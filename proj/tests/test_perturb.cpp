#include <algorithm>

#include "doctest.h"
#include "gsmds/perturb.hpp"
#include "gsmds/pipeline.hpp"
#include "gsmds/segmenter.hpp"
#include "testutil.hpp"

using namespace gsmds;

namespace {

PerturbationSpec spec_file(const std::string& name) {
    return load_perturbation_spec(testutil::data_path("specs/" + name));
}

std::vector<std::string> sorted_quantity_surfaces(const Problem& p) {
    std::vector<std::string> out;
    for (const QuantitySpan& q : extract_quantities(p.full_text())) out.push_back(q.surface);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::pair<int, int>> edge_shape(const Problem& p) {
    std::vector<std::pair<int, int>> out;
    for (const RelationEdge& e : analyze(p).structure.edges) out.emplace_back(e.source, e.target);
    return out;
}

}  // namespace

TEST_CASE("spec files parse into maps, scale factors and lexicons") {
    PerturbationSpec cmod = spec_file("kenny_cmod.spec");
    CHECK(cmod.kind == PerturbationKind::c_mod);
    CHECK(cmod.entity_map.size() == 3);
    CHECK(cmod.action_map.size() == 2);
    CHECK(cmod.unit_map.size() == 1);

    PerturbationSpec nmod = spec_file("sanjay_nmod.spec");
    CHECK(nmod.kind == PerturbationKind::n_mod);
    CHECK(nmod.value_map.size() == 3);

    PerturbationSpec lmod = spec_file("kenny_lmod.spec");
    CHECK(lmod.kind == PerturbationKind::l_mod);
    REQUIRE(lmod.lexicon.size() == 15);
    CHECK(lmod.lexicon[0].surface == "the week before");
    CHECK(lmod.lexicon[0].synonym == "the previous week");
    CHECK(lmod.lexicon[0].pos == "phrase");

    CHECK_THROWS_AS(parse_perturbation_spec_text("loose line without equals"), perturb_error);
    CHECK_THROWS_AS(parse_perturbation_spec_text("[unknown_section]\nx = y"), perturb_error);
}

TEST_CASE("ken C-MOD swaps the care-package domain and keeps the answer") {
    const Problem& ken = testutil::problem("ken");
    PerturbResult r = apply_cmod(ken, spec_file("ken_cmod.spec"));
    const std::string text = r.problem.full_text();
    CHECK(text.find("repair package") != std::string::npos);
    CHECK(text.find("nails") != std::string::npos);
    CHECK(text.find("screws and bolts") != std::string::npos);
    CHECK(text.find("socket wrenches") != std::string::npos);
    CHECK(text.find("drills and bits") != std::string::npos);
    CHECK(text.find("jelly beans") == std::string::npos);
    CHECK(text.find("brownies") == std::string::npos);
    CHECK(r.problem.gold_answer == Rational(18));
    CHECK(r.problem.provenance == Provenance::c_mod);
    CHECK(r.problem.parent_id == "ken");
    CHECK(sorted_quantity_surfaces(r.problem) == sorted_quantity_surfaces(ken));
}

TEST_CASE("kenny C-MOD preserves every number") {
    const Problem& kenny = testutil::problem("kenny");
    PerturbResult r = apply_cmod(kenny, spec_file("kenny_cmod.spec"));
    const std::string text = r.problem.full_text();
    CHECK(text.find("Zeta") != std::string::npos);
    CHECK(text.find("lines of code") != std::string::npos);
    CHECK(text.find("sprint") != std::string::npos);
    CHECK(text.find("Kenny") == std::string::npos);
    for (const char* num : {"324", "34", "20", "123", "64", "23"}) {
        CHECK_MESSAGE(text.find(num) != std::string::npos, "missing ", num);
    }
    CHECK(sorted_quantity_surfaces(r.problem) == sorted_quantity_surfaces(kenny));
    CHECK(r.problem.gold_answer == kenny.gold_answer);
}

TEST_CASE("empty C-MOD maps are the identity transform apart from provenance") {
    const Problem& kenny = testutil::problem("kenny");
    PerturbationSpec empty;
    empty.kind = PerturbationKind::c_mod;
    PerturbResult r = apply_cmod(kenny, empty);
    CHECK(r.problem.body == kenny.body);
    CHECK(r.problem.question == kenny.question);
    CHECK(r.problem.provenance == Provenance::c_mod);
}

TEST_CASE("a C-MOD target already present in the text is an overlap violation") {
    const Problem& kenny = testutil::problem("kenny");
    PerturbationSpec self_map;
    self_map.kind = PerturbationKind::c_mod;
    self_map.entity_map.emplace_back("records", "records");
    CHECK_THROWS_AS(apply_cmod(kenny, self_map), OverlapViolation);

    PerturbationSpec into_text;
    into_text.kind = PerturbationKind::c_mod;
    into_text.entity_map.emplace_back("jumping jacks", "records");  // "records" occurs
    CHECK_THROWS_AS(apply_cmod(kenny, into_text), OverlapViolation);
}

TEST_CASE("non-injective C-MOD maps are rejected") {
    PerturbationSpec bad;
    bad.kind = PerturbationKind::c_mod;
    bad.entity_map.emplace_back("cats", "ferrets");
    bad.entity_map.emplace_back("dogs", "ferrets");
    CHECK_THROWS_AS(apply_cmod(testutil::problem("larry"), bad), perturb_error);
}

TEST_CASE("unmapped capitalized entities are warned about, not failed") {
    const Problem& kiwi = testutil::problem("kiwi");
    PerturbationSpec spec;
    spec.kind = PerturbationKind::c_mod;
    spec.entity_map.emplace_back("kiwis", "pebbles");
    PerturbResult r = apply_cmod(kiwi, spec);
    bool flagged = std::any_of(r.warnings.begin(), r.warnings.end(), [](const std::string& w) {
        return w.find("Oliver") != std::string::npos;
    });
    CHECK(flagged);
}

TEST_CASE("word boundaries are respected by substitution") {
    Problem p;
    p.id = "boundary";
    p.body = "The cat sat near the catalog. The cat purred.";
    p.question = "How many cats are there?";
    p.gold_answer = Rational(1);
    PerturbationSpec spec;
    spec.kind = PerturbationKind::c_mod;
    spec.entity_map.emplace_back("cat", "dog");
    PerturbResult r = apply_cmod(p, spec);
    CHECK(r.problem.body == "The dog sat near the catalog. The dog purred.");
    CHECK(r.problem.question == "How many cats are there?");  // "cats" != "cat"
}

TEST_CASE("kenny N-MOD with k=2 doubles every count and recomputes the gold answer") {
    const Problem& kenny = testutil::problem("kenny");
    PerturbationSpec spec;
    spec.kind = PerturbationKind::n_mod;
    spec.scale_factor = 2;
    PerturbResult r = apply_nmod(kenny, spec);
    const std::string text = r.problem.full_text();
    for (const char* num : {"648", "68", "40", "246", "128", "46"}) {
        CHECK_MESSAGE(text.find(num) != std::string::npos, "missing ", num);
    }
    CHECK(text.find("(0)") != std::string::npos);  // 2*0 stays 0
    CHECK(text.find("324") == std::string::npos);

    // Independent oracle: straight-line re-evaluation of the scaled story.
    const std::int64_t done = 68 + 40 + 0 + 246 + 128 + 46;
    const std::int64_t expected = 648 - done + 1;
    CHECK(expected == 121);
    CHECK(r.problem.gold_answer == Rational(expected));
    CHECK(r.problem.provenance == Provenance::n_mod);
    // the perturbed problem still satisfies the chain-vs-answer invariant
    CHECK(evaluate_solution(r.problem.solution_expr) == r.problem.gold_answer);
}

TEST_CASE("N-MOD with k=1 leaves the text identical") {
    const Problem& kenny = testutil::problem("kenny");
    PerturbationSpec spec;
    spec.kind = PerturbationKind::n_mod;
    spec.scale_factor = 1;
    PerturbResult r = apply_nmod(kenny, spec);
    CHECK(r.problem.body == kenny.body);
    CHECK(r.problem.question == kenny.question);
    CHECK(r.problem.gold_answer == kenny.gold_answer);
    CHECK(r.problem.provenance == Provenance::n_mod);
}

TEST_CASE("sanjay explicit N-MOD swaps the measurements and recomputes 20 percent") {
    const Problem& sanjay = testutil::problem("sanjay");
    PerturbResult r = apply_nmod(sanjay, spec_file("sanjay_nmod.spec"));
    CHECK(r.problem.body.find("60-foot dolphin with 16 12-inch remoras") != std::string::npos);
    CHECK(r.problem.gold_answer == Rational(20));
    // matches the curated modified problem in the dataset
    CHECK(r.problem.full_text() == testutil::problem("sanjay_nmod").full_text());
}

TEST_CASE("explicit N-MOD maps only touch count/magnitude surfaces") {
    // "40" appears in marcus only as the percentage "40%", which is the
    // proportional structure and must not be rewritten.
    const Problem& marcus = testutil::problem("marcus");
    PerturbationSpec spec;
    spec.kind = PerturbationKind::n_mod;
    spec.value_map.emplace_back("40", "60");
    PerturbResult r = apply_nmod(marcus, spec);
    CHECK(r.problem.body == marcus.body);
    CHECK(r.problem.gold_answer == marcus.gold_answer);
}

TEST_CASE("uniform N-MOD leaves multipliers and fractions verbatim") {
    const Problem& ken = testutil::problem("ken");
    PerturbationSpec spec;
    spec.kind = PerturbationKind::n_mod;
    spec.scale_factor = 3;
    PerturbResult r = apply_nmod(ken, spec);
    const std::string text = r.problem.full_text();
    CHECK(text.find("6 pounds") != std::string::npos);   // 2 -> 6
    CHECK(text.find("triple") != std::string::npos);     // multiplier kept
    CHECK(text.find("1/2") != std::string::npos);        // fraction kept
    CHECK(text.find("double") != std::string::npos);
    // chain: ((6*3)/2 + 6*3) * 2 = 54
    CHECK(r.problem.gold_answer == Rational(54));
}

TEST_CASE("scale factors above 10 need an explicit opt-in") {
    const Problem& kenny = testutil::problem("kenny");
    PerturbationSpec spec;
    spec.kind = PerturbationKind::n_mod;
    spec.scale_factor = 11;
    CHECK_THROWS_AS(apply_nmod(kenny, spec), perturb_error);
    spec.allow_large_scale = true;
    PerturbResult r = apply_nmod(kenny, spec);
    CHECK(r.problem.full_text().find("3564") != std::string::npos);  // 324 * 11
}

TEST_CASE("N-MOD without a solution chain is rejected") {
    Problem p;
    p.id = "nosol";
    p.body = "Ann bought 7 pears.";
    p.question = "How many pears does Ann have?";
    p.gold_answer = Rational(7);
    PerturbationSpec spec;
    spec.kind = PerturbationKind::n_mod;
    spec.scale_factor = 2;
    CHECK_THROWS_AS(apply_nmod(p, spec), MissingSolution);
}

TEST_CASE("a substitution that breaks integrality is rejected") {
    Problem p;
    p.id = "integral";
    p.body = "A rope of 40 meters is cut into 8 equal pieces.";
    p.question = "How long is one piece?";
    p.gold_answer = Rational(5);
    p.solution_expr = gsmds::parse_solution_steps({"40/8=5"});
    PerturbationSpec spec;
    spec.kind = PerturbationKind::n_mod;
    spec.value_map.emplace_back("40", "25");
    CHECK_THROWS_AS(apply_nmod(p, spec), NonIntegerResult);
}

TEST_CASE("kenny L-MOD substitutes synonyms and never touches a number") {
    const Problem& kenny = testutil::problem("kenny");
    PerturbResult r = apply_lmod(kenny, spec_file("kenny_lmod.spec"));
    const std::string text = r.problem.full_text();
    for (const char* word : {"intends", "ensure", "performs", "star jumps", "accomplished",
                             "documented", "overall", "examines", "logs", "notices", "omitted",
                             "surpasses", "the previous week"}) {
        CHECK_MESSAGE(text.find(word) != std::string::npos, "missing ", word);
    }
    for (const char* num : {"324", "34", "20", "123", "64", "23"}) {
        CHECK_MESSAGE(text.find(num) != std::string::npos, "missing ", num);
    }
    CHECK(text.find("jumping jacks") == std::string::npos);
    CHECK(sorted_quantity_surfaces(r.problem) == sorted_quantity_surfaces(kenny));
    CHECK(r.problem.gold_answer == kenny.gold_answer);
    // weekday names survive
    for (const char* day : {"Sunday", "Monday", "Tuesday", "Wednesday", "Thursday", "Friday",
                            "Saturday"}) {
        CHECK(text.find(day) != std::string::npos);
    }
}

TEST_CASE("an empty lexicon is the identity") {
    const Problem& kenny = testutil::problem("kenny");
    PerturbationSpec spec;
    spec.kind = PerturbationKind::l_mod;
    PerturbResult r = apply_lmod(kenny, spec);
    CHECK(r.problem.body == kenny.body);
    CHECK(r.problem.provenance == Provenance::l_mod);
}

TEST_CASE("a lexicon entry targeting a number is a hard failure") {
    PerturbationSpec spec;
    spec.kind = PerturbationKind::l_mod;
    spec.lexicon.push_back({"324", "verb", "many"});
    CHECK_THROWS_AS(apply_lmod(testutil::problem("kenny"), spec), NumberTouched);
}

TEST_CASE("L-MOD copies simple inflection from the source token") {
    Problem p;
    p.id = "morph";
    p.body = "He records the total. He recorded it yesterday. He is recording now. She uses a pen.";
    p.question = "How many pens does she use?";
    p.gold_answer = Rational(1);
    PerturbationSpec spec;
    spec.kind = PerturbationKind::l_mod;
    spec.lexicon.push_back({"record", "verb", "document"});
    spec.lexicon.push_back({"use", "verb", "utilize"});
    spec.lexicon.push_back({"skip", "verb", "omit"});
    PerturbResult r = apply_lmod(p, spec);
    CHECK(r.problem.body.find("documents the total") != std::string::npos);
    CHECK(r.problem.body.find("documented it yesterday") != std::string::npos);
    CHECK(r.problem.body.find("documenting now") != std::string::npos);
    CHECK(r.problem.body.find("utilizes a pen") != std::string::npos);

    Problem q;
    q.id = "morph2";
    q.body = "He skipped a day.";
    q.question = "How many days did he skip?";
    q.gold_answer = Rational(1);
    PerturbResult r2 = apply_lmod(q, spec);
    CHECK(r2.problem.body.find("omitted a day") != std::string::npos);
    CHECK(r2.problem.question.find("omit?") != std::string::npos);
}

TEST_CASE("perturbed problems re-ingest with an isomorphic edge set") {
    const Problem& kenny = testutil::problem("kenny");
    auto original_shape = edge_shape(kenny);

    PerturbationSpec nmod;
    nmod.kind = PerturbationKind::n_mod;
    nmod.scale_factor = 2;
    CHECK(edge_shape(apply_nmod(kenny, nmod).problem) == original_shape);
    CHECK(edge_shape(apply_cmod(kenny, spec_file("kenny_cmod.spec")).problem) == original_shape);
    CHECK(edge_shape(apply_lmod(kenny, spec_file("kenny_lmod.spec")).problem) == original_shape);

    const Problem& sanjay = testutil::problem("sanjay");
    CHECK(edge_shape(apply_nmod(sanjay, spec_file("sanjay_nmod.spec")).problem) ==
          edge_shape(sanjay));
}

TEST_CASE("recompute_gold re-evaluates the kiwi chain") {
    const Problem& kiwi = testutil::problem("kiwi");
    CHECK(recompute_gold(kiwi.solution_expr, {}) == Rational(190));

    // k = 2 on the two leaf pick counts; derived independently:
    //   88*2 = 176, 88+116 = 204, 204+176 = 380
    std::vector<std::pair<Rational, Rational>> subst = {{Rational(44), Rational(88)},
                                                        {Rational(58), Rational(116)}};
    CHECK(recompute_gold(kiwi.solution_expr, subst) == Rational(380));
}

TEST_CASE("recompute_gold reports division by zero") {
    auto steps = gsmds::parse_solution_steps({"10/5=2"});
    CHECK_THROWS_AS(recompute_gold(steps, {{Rational(5), Rational(0)}}), DivisionByZero);
}

TEST_CASE("pinned operands are never substituted") {
    const Problem& sanjay = testutil::problem("sanjay");
    // substituting 12 -> 16 must not touch the pinned feet-to-inches factor
    std::vector<std::pair<Rational, Rational>> subst = {{Rational(40), Rational(60)},
                                                        {Rational(12), Rational(16)},
                                                        {Rational(16), Rational(12)}};
    CHECK(recompute_gold(sanjay.solution_expr, subst) == Rational(20));
}
