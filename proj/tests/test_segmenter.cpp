#include <algorithm>

#include "doctest.h"
#include "gsmds/segmenter.hpp"
#include "gsmds/textutil.hpp"
#include "testutil.hpp"

using namespace gsmds;

TEST_CASE("kiwi problem segments into five premises with the stative split") {
    SegmentResult r = segment(testutil::problem("kiwi"));
    REQUIRE(r.premises.size() == 5);
    CHECK(r.premises[0].text == "Oliver picks 44 kiwis on Friday.");
    CHECK(r.premises[2].text == "On Sunday, he picks double the number of kiwis he did on Friday,");
    CHECK(r.premises[3].text == "but five of them were a bit smaller than average.");
    CHECK(r.premises[4].is_query);
    for (std::size_t i = 0; i + 1 < r.premises.size(); ++i) CHECK_FALSE(r.premises[i].is_query);
}

TEST_CASE("plain two-sentence narration does not split") {
    Problem p;
    p.id = "pat";
    p.body = "Pat took off his shoes. Pat got in bed.";
    p.question = "How long did Pat sleep?";
    SegmentResult r = segment(p);
    REQUIRE(r.premises.size() == 3);
    CHECK(r.premises[0].text == "Pat took off his shoes.");
    CHECK(r.premises[1].text == "Pat got in bed.");
    CHECK(r.premises[2].is_query);
}

TEST_CASE("one-sentence body yields exactly body plus query") {
    Problem p;
    p.id = "tiny";
    p.body = "Ann bought 7 pears.";
    p.question = "How many pears does Ann have?";
    SegmentResult r = segment(p);
    REQUIRE(r.premises.size() == 2);
    CHECK(r.premises[0].text == "Ann bought 7 pears.");
    CHECK(r.premises[1].is_query);
    CHECK(r.premises[1].text == "Ann wants to know how many pears does Ann have.");
}

TEST_CASE("a same-tense coordination stays one premise") {
    Problem p;
    p.id = "same";
    p.body = "Ken placed a box on a scale, and then he poured nails into it.";
    p.question = "What is the weight?";
    SegmentResult r = segment(p);
    REQUIRE(r.premises.size() == 2);  // no split: both conjuncts eventive
}

TEST_CASE("EmptyBody is raised for wordless bodies") {
    Problem p;
    p.id = "empty";
    p.body = "...";
    p.question = "What?";
    CHECK_THROWS_AS(segment(p), EmptyBody);
}

TEST_CASE("marker annotation finds adverbials, days and tense") {
    MarkerAnnotation m = annotate_markers("Then he picks 58 kiwis on Saturday.");
    CHECK(m.temporal == TemporalAdverbial::then);
    CHECK(m.day == 6);
    CHECK(m.tense == TenseClass::active_eventive);
    CHECK_FALSE(m.contrast);

    m = annotate_markers("but five of them were a bit smaller than average");
    CHECK(m.contrast);
    CHECK(m.tense == TenseClass::stative);
    CHECK_FALSE(m.temporal.has_value());

    m = annotate_markers("And finally, he added enough gummy worms to double the weight");
    CHECK(m.temporal == TemporalAdverbial::finally_);
    CHECK(m.tense == TenseClass::active_eventive);
}

TEST_CASE("marker annotation covers the remaining adverbial classes") {
    CHECK(annotate_markers("First, he cooked rice.").temporal == TemporalAdverbial::first);
    CHECK(annotate_markers("First, he cooked rice.").ordinal == 1);
    CHECK(annotate_markers("Second, he plated it.").ordinal == 2);
    CHECK(annotate_markers("Initially, the tank was empty.").temporal ==
          TemporalAdverbial::initially);
    CHECK(annotate_markers("Two days later, he returned.").temporal == TemporalAdverbial::later);
    CHECK(annotate_markers("Two days before, he had left.").temporal ==
          TemporalAdverbial::before);
    CHECK(annotate_markers("Previously, he owned a bike.").temporal ==
          TemporalAdverbial::previously);
    CHECK(annotate_markers("In the past, he walked everywhere.").temporal ==
          TemporalAdverbial::in_the_past);
    CHECK(annotate_markers("While cleaning, he sang.").temporal == TemporalAdverbial::while_);
    CHECK(annotate_markers("Next, he added flour.").temporal == TemporalAdverbial::next);
    // "next week" is a time reference, not the sequencing adverbial.
    CHECK_FALSE(annotate_markers("He will do it next week sometime.").temporal.has_value());
    CHECK(annotate_markers("He had eaten before.").tense == TenseClass::past_perfect);
    CHECK(annotate_markers("He has 3 cats.").tense == TenseClass::stative);
    CHECK(annotate_markers("Marcus is trying to decide.").tense == TenseClass::active_eventive);
    CHECK(annotate_markers("There's a 50% chance he'll collect it.").tense ==
          TenseClass::active_eventive);
    // day word must occur verbatim for the day field to be set
    CHECK_FALSE(annotate_markers("He rested that day.").day.has_value());
}

TEST_CASE("quantity extraction covers the worked examples") {
    auto spans = extract_quantities("he picks double the number of kiwis he did on Friday");
    REQUIRE(spans.size() == 1);
    CHECK(spans[0].surface == "double");
    CHECK(spans[0].value == Rational(2));
    CHECK(spans[0].kind == QuantityKind::multiplier);

    spans = extract_quantities("whose total weight equaled 1/2 of the weight");
    REQUIRE(spans.size() == 1);
    CHECK(spans[0].surface == "1/2");
    CHECK(spans[0].value == Rational(1, 2));
    CHECK(spans[0].kind == QuantityKind::fraction);

    spans = extract_quantities("a 60-foot dolphin with 16 12-inch remoras");
    REQUIRE(spans.size() == 3);
    CHECK(spans[0].value == Rational(60));
    CHECK(spans[1].value == Rational(16));
    CHECK(spans[2].value == Rational(12));
    for (const auto& s : spans) CHECK(s.kind == QuantityKind::count_or_magnitude);
}

TEST_CASE("quantity extraction handles percents, times, spelled numbers and ordinals") {
    auto spans = extract_quantities("there's a 40% chance she'll agree");
    REQUIRE(spans.size() == 1);
    CHECK(spans[0].kind == QuantityKind::percentage);
    CHECK(spans[0].value == Rational(40));
    CHECK(spans[0].surface == "40%");

    spans = extract_quantities("He has 3 times as many dogs as cats.");
    REQUIRE(spans.size() == 1);
    CHECK(spans[0].kind == QuantityKind::multiplier);
    CHECK(spans[0].surface == "3 times");
    CHECK(spans[0].value == Rational(3));

    spans = extract_quantities("three times the number of fish");
    REQUIRE(spans.size() == 1);
    CHECK(spans[0].kind == QuantityKind::multiplier);
    CHECK(spans[0].value == Rational(3));

    spans = extract_quantities("But a quarter of the remoras go away.");
    REQUIRE(spans.size() == 1);
    CHECK(spans[0].kind == QuantityKind::fraction);
    CHECK(spans[0].value == Rational(1, 4));

    spans = extract_quantities("He bought twelve eggs and 1,000 napkins for $1.50.");
    REQUIRE(spans.size() == 3);
    CHECK(spans[0].value == Rational(12));
    CHECK(spans[1].value == Rational(1000));
    CHECK(spans[2].value == Rational(3, 2));

    spans = extract_quantities("a third of the cake");
    REQUIRE(spans.size() == 1);
    CHECK(spans[0].kind == QuantityKind::fraction);
    CHECK(spans[0].value == Rational(1, 3));

    spans = extract_quantities("Third, he wiped the counter.");
    REQUIRE(spans.size() == 1);
    CHECK(spans[0].kind == QuantityKind::ordinal_label);
    CHECK(spans[0].value == Rational(3));
}

TEST_CASE("spans never overlap and are sorted by start") {
    for (const Problem& p : testutil::worked_problems()) {
        for (const Premise& prem : segment(p).premises) {
            const auto& spans = prem.quantities;
            for (std::size_t i = 0; i + 1 < spans.size(); ++i) {
                CHECK(spans[i].start < spans[i + 1].start);
                CHECK(spans[i].end <= spans[i + 1].start);
            }
            for (const auto& s : spans) {
                CHECK(s.end <= prem.text.size());
                CHECK(s.surface == prem.text.substr(s.start, s.end - s.start));
            }
        }
    }
}

TEST_CASE("segmentation covers the body text exactly") {
    for (const Problem& p : testutil::worked_problems()) {
        SegmentResult r = segment(p);
        std::string joined;
        for (const Premise& prem : r.premises) {
            if (prem.is_query) continue;
            if (!joined.empty()) joined += " ";
            joined += prem.text;
        }
        CHECK(collapse_whitespace(joined) == collapse_whitespace(p.body));
    }
}

TEST_CASE("segment and annotate_markers are deterministic") {
    const Problem& p = testutil::problem("thomas");
    SegmentResult a = segment(p);
    SegmentResult b = segment(p);
    REQUIRE(a.premises.size() == b.premises.size());
    for (std::size_t i = 0; i < a.premises.size(); ++i) {
        CHECK(a.premises[i].text == b.premises[i].text);
        CHECK(a.premises[i].markers == b.premises[i].markers);
        CHECK(a.premises[i].quantities == b.premises[i].quantities);
    }
}

TEST_CASE("sentence splitting respects abbreviations and decimals") {
    auto sentences = split_sentences("Mr. Smith bought 2.5 pounds of rice. He paid $1.50. Done!");
    REQUIRE(sentences.size() == 3);
    CHECK(std::string(sentences[0].text) == "Mr. Smith bought 2.5 pounds of rice.");
    CHECK(std::string(sentences[1].text) == "He paid $1.50.");
    CHECK(std::string(sentences[2].text) == "Done!");

    sentences = split_sentences("Did it work? Yes. It did.");
    REQUIRE(sentences.size() == 3);

    // no terminator at all: the whole text is one sentence
    sentences = split_sentences("a trailing fragment without punctuation");
    REQUIRE(sentences.size() == 1);
}

TEST_CASE("marker lexicon overrides extend the embedded table") {
    std::string tsv_path = testutil::data_path("marker_overrides.tsv");
    MarkerLexicon lx = MarkerLexicon::with_overrides(tsv_path);
    CHECK(lx.version() == "1+overrides");
    MarkerAnnotation m = annotate_markers("Straightaway he left for the station.", lx);
    CHECK(m.temporal == TemporalAdverbial::then);
    // embedded behavior unaffected
    CHECK(annotate_markers("Straightaway he left.").temporal != TemporalAdverbial::then);
}

TEST_CASE("unhandled number words are flagged in notes") {
    Problem p;
    p.id = "dozen";
    p.body = "He bought a dozen eggs.";
    p.question = "How many eggs does he have?";
    SegmentResult r = segment(p);
    REQUIRE(r.notes.size() == 1);
    CHECK(r.notes[0].find("dozen") != std::string::npos);
}
