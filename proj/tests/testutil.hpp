#pragma once
// Shared fixtures: dataset paths, problem lookup, and the random generators
// used by the property tests. Generators use fixed seeds so failures
// reproduce.

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "gsmds/dataset.hpp"
#include "gsmds/model.hpp"
#include "gsmds/segmenter.hpp"

#ifndef GSMDS_TEST_DATA_DIR
#error "GSMDS_TEST_DATA_DIR must be defined by the build"
#endif

namespace testutil {

inline std::string data_path(const std::string& rel) {
    return std::string(GSMDS_TEST_DATA_DIR) + "/" + rel;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    REQUIRE_MESSAGE(in.good(), "missing test data file: ", path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline const std::vector<gsmds::Problem>& worked_problems() {
    static const std::vector<gsmds::Problem> problems =
        gsmds::load_problems_jsonl(data_path("worked_problems.jsonl"));
    return problems;
}

inline const gsmds::Problem& problem(const std::string& id) {
    for (const gsmds::Problem& p : worked_problems()) {
        if (p.id == id) return p;
    }
    static gsmds::Problem missing;
    REQUIRE_MESSAGE(false, "no such worked problem: ", id);
    return missing;
}

// ---------------------------------------------------------------------------
// Random premise lists for the reorder properties. Texts carry the markers so
// annotate_markers rediscovers them, exercising the real path.

struct PremiseListGenerator {
    std::mt19937 rng;

    explicit PremiseListGenerator(std::uint32_t seed) : rng(seed) {}

    std::vector<gsmds::Premise> next() {
        static const char* kPlain[] = {
            "He bought some apples.",      "She counted the coins.",
            "The basket was heavy.",       "He paid the cashier.",
            "They walked to the market.",  "She sold three hats.",
            "He filled the jar with beans.","The dog carried the stick.",
        };
        static const char* kDays[] = {
            "On Sunday he ran a mile.",    "On Monday he ran two miles.",
            "On Tuesday he rested.",       "On Wednesday he ran again.",
            "On Thursday he swam.",        "On Friday he ran five miles.",
            "On Saturday he stretched.",
        };
        std::uniform_int_distribution<int> len_dist(1, 8);
        std::uniform_int_distribution<int> pct(0, 99);

        std::vector<std::string> texts;
        int n = len_dist(rng);
        bool used_first = false, used_finally = false;
        int next_ordinal = 2;
        for (int i = 0; i < n; ++i) {
            int roll = pct(rng);
            if (roll < 12 && !used_first) {
                texts.push_back("First, he opened the shop.");
                used_first = true;
            } else if (roll < 20 && !used_finally) {
                texts.push_back("Finally, he closed the shop.");
                used_finally = true;
            } else if (roll < 40) {
                texts.push_back(kDays[static_cast<std::size_t>(pct(rng)) % 7]);
            } else if (roll < 50 && next_ordinal <= 5) {
                static const char* kOrd[] = {"Second", "Third", "Fourth", "Fifth"};
                texts.push_back(std::string(kOrd[next_ordinal - 2]) +
                                ", he wiped the counter.");
                ++next_ordinal;
            } else if (roll < 58) {
                texts.push_back("He lost a glove while walking home.");
                texts.push_back("After walking home, he made tea.");
            } else if (roll < 64) {
                texts.push_back("Then he swept the floor.");
            } else {
                texts.push_back(kPlain[static_cast<std::size_t>(pct(rng)) % 8]);
            }
        }
        texts.push_back("He wants to know how many items he sold.");

        std::vector<gsmds::Premise> premises;
        for (std::size_t i = 0; i < texts.size(); ++i) {
            gsmds::Premise p;
            p.index = static_cast<int>(i) + 1;
            p.text = texts[i];
            p.markers = gsmds::annotate_markers(p.text);
            p.quantities = gsmds::extract_quantities(p.text);
            p.is_query = i + 1 == texts.size();
            premises.push_back(std::move(p));
        }
        return premises;
    }
};

// ---------------------------------------------------------------------------
// Random valid discourse structures for round-trip and main-chain properties.

struct StructureGenerator {
    std::mt19937 rng;

    explicit StructureGenerator(std::uint32_t seed) : rng(seed) {}

    gsmds::DiscourseStructure next() {
        static const char* kWords[] = {"apples", "coins", "marbles", "boxes", "steps",
                                       "pages",  "cards", "stones",  "bells", "ropes"};
        std::uniform_int_distribution<int> n_dist(1, 9);
        std::uniform_int_distribution<int> pct(0, 99);

        gsmds::DiscourseStructure s;
        const int n = n_dist(rng);
        for (int i = 1; i <= n; ++i) {
            gsmds::Premise p;
            p.index = i;
            p.text = "He moved " + std::to_string(pct(rng)) + " " +
                     kWords[static_cast<std::size_t>(pct(rng)) % 10] + ".";
            p.is_query = i == n;
            s.premises.push_back(std::move(p));
        }

        // Narration spine through a random subset containing 1 and n, side
        // premises attached with elaboration/background to earlier nodes.
        std::vector<int> spine = {1};
        for (int i = 2; i < n; ++i) {
            if (pct(rng) < 60) spine.push_back(i);
        }
        if (n > 1) spine.push_back(n);
        for (std::size_t k = 0; k + 1 < spine.size(); ++k) {
            s.edges.push_back({spine[k], spine[k + 1], gsmds::Relation::narration});
        }
        std::vector<bool> on_spine(static_cast<std::size_t>(n) + 1, false);
        for (int v : spine) on_spine[static_cast<std::size_t>(v)] = true;
        for (int i = 2; i <= n; ++i) {
            if (on_spine[static_cast<std::size_t>(i)]) continue;
            std::uniform_int_distribution<int> src_dist(1, i - 1);
            gsmds::Relation rel =
                pct(rng) < 50 ? gsmds::Relation::background : gsmds::Relation::elaboration;
            s.edges.push_back({src_dist(rng), i, rel});
        }

        s.topics.push_back({"topic-a", "the main line of events"});
        if (pct(rng) < 70) {
            s.topics.push_back({"topic-b", "supporting details"});
            s.topic_relation =
                gsmds::TopicRelation{"topic-a", gsmds::Relation::elaboration, "topic-b"};
        }
        return s;
    }
};

}  // namespace testutil
