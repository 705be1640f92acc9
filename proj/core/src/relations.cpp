#include "gsmds/relations.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "gsmds/segmenter.hpp"
#include "gsmds/textutil.hpp"

namespace gsmds {

namespace {

const std::unordered_set<std::string>& summary_stopwords() {
    static const std::unordered_set<std::string> kStop = {
        "a",    "an",   "the",  "of",   "to",   "in",   "on",   "at",    "he",   "she",
        "they", "it",   "his",  "her",  "their","its",  "than","into",  "with", "and",
        "but",  "that", "this", "them", "was",  "were", "is",   "are",   "had",  "has",
        "have", "then", "also", "more", "most", "very", "really","bit",  "lot",  "few",
        "enough", "some", "all", "away", "out", "up",   "down", "so",    "as",   "by",
        "from", "for",  "whether", "sure", "many", "much", "if",
    };
    return kStop;
}

bool is_content_word(const MarkerLexicon& lx, std::string_view w) {
    std::string lw = to_lower(w);
    if (summary_stopwords().count(lw) > 0) return false;
    if (lx.weekday(lw)) return false;
    return true;
}

std::string past_participle(std::string_view verb) {
    static const std::unordered_map<std::string, std::string> kIrregular = {
        {"do", "done"},     {"did", "done"},    {"go", "gone"},    {"went", "gone"},
        {"take", "taken"},  {"took", "taken"},  {"get", "gotten"}, {"got", "gotten"},
        {"eat", "eaten"},   {"ate", "eaten"},   {"see", "seen"},   {"saw", "seen"},
        {"give", "given"},  {"gave", "given"},  {"make", "made"},  {"made", "made"},
        {"buy", "bought"},  {"bought", "bought"},{"lose", "lost"}, {"lost", "lost"},
        {"come", "come"},   {"came", "come"},   {"write", "written"},
        {"wrote", "written"},{"pay", "paid"},   {"paid", "paid"},  {"sell", "sold"},
        {"sold", "sold"},   {"spend", "spent"}, {"spent", "spent"},{"run", "run"},
        {"ran", "run"},     {"win", "won"},     {"won", "won"},    {"keep", "kept"},
        {"hold", "held"},   {"put", "put"},     {"cut", "cut"},    {"let", "let"},
        {"set", "set"},     {"tell", "told"},   {"catch", "caught"},
    };
    std::string v = to_lower(verb);
    // Strip 3rd person -s / -es, progressive -ing.
    if (v.size() > 3 && v.compare(v.size() - 3, 3, "ies") == 0) v = v.substr(0, v.size() - 3) + "y";
    else if (v.size() > 2 && v.back() == 's' && v.compare(v.size() - 2, 2, "ss") != 0) v.pop_back();
    if (v.size() > 4 && v.compare(v.size() - 3, 3, "ing") == 0) {
        std::string stem = v.substr(0, v.size() - 3);
        v = stem;
    }
    auto it = kIrregular.find(v);
    if (it != kIrregular.end()) return it->second;
    if (v.size() > 2 && v.compare(v.size() - 2, 2, "ed") == 0) return v;
    if (!v.empty() && v.back() == 'e') return v + "d";
    return v + "ed";
}

std::string gerund(std::string_view verb) {
    std::string v = to_lower(verb);
    if (v.size() > 3 && v.compare(v.size() - 3, 3, "ies") == 0) v = v.substr(0, v.size() - 3) + "y";
    else if (v.size() > 2 && v.back() == 's' && v.compare(v.size() - 2, 2, "ss") != 0) v.pop_back();
    if (v.size() > 4 && v.compare(v.size() - 3, 3, "ing") == 0) return v;
    if (v.size() > 2 && v.compare(v.size() - 2, 2, "ed") == 0) v = v.substr(0, v.size() - 2);
    if (!v.empty() && v.back() == 'e') v.pop_back();
    return v + "ing";
}

std::string singularize(std::string_view noun) {
    std::string n(noun);
    if (n.size() > 3 && n.back() == 's' && n.compare(n.size() - 2, 2, "ss") != 0) n.pop_back();
    return n;
}

std::string weekday_name(int d) {
    static const char* kNames[] = {"Sunday", "Monday", "Tuesday", "Wednesday",
                                   "Thursday", "Friday", "Saturday"};
    return (d >= 0 && d < 7) ? kNames[d] : "";
}

struct Words {
    std::vector<std::string> lower;
    std::vector<std::string> original;
    std::vector<bool> number;
};

Words words_of(std::string_view text) {
    Words w;
    for (const Token& t : tokenize(text)) {
        if (!t.is_word && !t.is_number) continue;
        w.lower.push_back(to_lower(t.text));
        w.original.emplace_back(t.text);
        w.number.push_back(t.is_number);
    }
    return w;
}

}  // namespace

std::string eventuality_kind_name(EventualityKind k) {
    switch (k) {
        case EventualityKind::event: return "event";
        case EventualityKind::state: return "state";
        case EventualityKind::concept_: return "concept";
    }
    return "?";
}

Eventuality infer_eventuality(const Premise& premise, const MarkerLexicon& lx) {
    Eventuality ev;
    ev.premise_index = premise.index;

    TenseAnalysis tense = classify_tense(premise.text, lx);
    const Words w = words_of(premise.text);

    if (!tense.has_verb) {
        ev.kind = EventualityKind::concept_;
        ev.no_predicate = true;
        std::string summary;
        int taken = 0;
        for (std::size_t i = 0; i < w.lower.size() && taken < 4; ++i) {
            if (!is_content_word(lx, w.lower[i])) continue;
            if (!summary.empty()) summary += " ";
            summary += w.lower[i];
            ++taken;
        }
        ev.summary = summary;
        return ev;
    }

    std::size_t head_pos = w.lower.size();
    for (std::size_t i = 0; i < w.lower.size(); ++i) {
        if (w.lower[i] == to_lower(tense.head_verb)) {
            head_pos = i;
            break;
        }
    }

    auto day_suffix = [&]() -> std::string {
        if (premise.markers.day) return " on " + weekday_name(*premise.markers.day);
        return "";
    };

    if (tense.tense == TenseClass::active_eventive) {
        ev.kind = EventualityKind::event;
        std::string object;
        for (std::size_t i = head_pos + 1; i < w.lower.size(); ++i) {
            if (w.number[i]) continue;
            if (!is_content_word(lx, w.lower[i])) continue;
            if (lx.is_eventive_verb(w.lower[i])) continue;
            object = w.lower[i];
            break;
        }
        if (object.empty()) {
            ev.summary = gerund(tense.head_verb) + day_suffix();
        } else {
            ev.summary = object + " " + past_participle(tense.head_verb) + day_suffix();
        }
        return ev;
    }

    // Stative / past perfect.
    ev.kind = EventualityKind::state;
    std::string pre;
    int pre_count = 0;
    for (std::size_t i = 0; i < head_pos && pre_count < 2; ++i) {
        if (!is_content_word(lx, w.lower[i])) continue;
        if (!pre.empty()) pre += " ";
        pre += w.lower[i];
        ++pre_count;
    }
    std::string post;
    int post_count = 0;
    for (std::size_t i = head_pos + 1; i < w.lower.size() && post_count < 2; ++i) {
        if (!is_content_word(lx, w.lower[i])) continue;
        if (!post.empty()) post += " ";
        post += w.lower[i];
        ++post_count;
    }
    std::string verb = to_lower(tense.head_verb);
    std::string summary = pre;
    if (!summary.empty()) summary += " ";
    summary += verb;
    if (!post.empty()) summary += " " + post;
    ev.summary = summary + day_suffix();
    return ev;
}

namespace {

// Bare "before": trailing adverb, not the "<number> <unit> before" pattern.
bool is_bare_before(const Premise& p, const MarkerLexicon& lx) {
    if (p.markers.temporal != TemporalAdverbial::before) return false;
    const Words w = words_of(p.text);
    if (w.lower.empty() || w.lower.back() != "before") return false;
    if (w.lower.size() >= 3) {
        const std::string& unit = w.lower[w.lower.size() - 2];
        const std::string& num = w.lower[w.lower.size() - 3];
        if (lx.is_duration_unit(unit) && (w.number[w.lower.size() - 3] || lx.spelled_number(num))) {
            return false;
        }
    }
    return true;
}

bool quantity_overlap(const Premise& later, const Premise& earlier) {
    for (const QuantitySpan& a : later.quantities) {
        for (const QuantitySpan& b : earlier.quantities) {
            if (a.kind == b.kind && to_lower(a.surface) == to_lower(b.surface)) return true;
        }
    }
    return false;
}

}  // namespace

std::vector<RelationEdge> infer_relations(const std::vector<Premise>& premises,
                                          const MarkerLexicon& lx) {
    std::vector<RelationEdge> edges;
    if (premises.size() < 2) return edges;

    int chain_tail = 1;
    for (std::size_t j = 1; j < premises.size(); ++j) {
        const Premise& p = premises[j];
        const int idx = static_cast<int>(j) + 1;

        if (p.is_query) {
            edges.push_back({chain_tail, idx, Relation::narration});
            chain_tail = idx;
            continue;
        }

        // R1: background.
        bool stative = p.markers.tense == TenseClass::stative ||
                       p.markers.tense == TenseClass::past_perfect;
        bool background = (stative && p.markers.contrast) ||
                          p.markers.tense == TenseClass::past_perfect ||
                          p.markers.temporal == TemporalAdverbial::previously ||
                          p.markers.temporal == TemporalAdverbial::in_the_past ||
                          is_bare_before(p, lx);
        if (background) {
            int source = chain_tail;
            for (std::size_t i = j; i-- > 0;) {
                if (premises[i].markers.tense == TenseClass::active_eventive) {
                    source = premises[i].index;
                    break;
                }
            }
            edges.push_back({source, idx, Relation::background});
            continue;  // background does not advance the chain
        }

        // R2: elaboration.
        if (p.markers.temporal == TemporalAdverbial::while_) {
            edges.push_back({chain_tail, idx, Relation::elaboration});
            chain_tail = idx;
            continue;
        }
        if (!p.markers.day && !p.markers.temporal) {
            int source = 0;
            for (std::size_t i = j; i-- > 0;) {
                if (quantity_overlap(p, premises[i])) {
                    source = premises[i].index;
                    break;
                }
            }
            if (source != 0) {
                edges.push_back({source, idx, Relation::elaboration});
                chain_tail = idx;
                continue;
            }
        }

        // R3/R4: narration from the chain tail. Sequential markers and
        // consecutive days attach exactly like the default action-chain
        // fallback, so both share one attachment.
        edges.push_back({chain_tail, idx, Relation::narration});
        chain_tail = idx;
    }
    return edges;
}

TopicDerivation derive_topics(const std::vector<Premise>& premises,
                              const std::vector<RelationEdge>& edges,
                              const MarkerLexicon& lx) {
    TopicDerivation out;
    if (premises.empty()) return out;

    std::string agent = detect_agent(premises.front().text, lx);
    if (agent.empty()) {
        for (const Premise& p : premises) {
            agent = detect_agent(p.text, lx);
            if (!agent.empty()) break;
        }
    }

    const Premise& root = premises.front();
    TenseAnalysis root_tense = classify_tense(root.text, lx);
    const Words rw = words_of(root.text);

    std::string desc_a;
    if (root_tense.has_verb && root_tense.tense == TenseClass::active_eventive) {
        std::size_t head_pos = rw.lower.size();
        for (std::size_t i = 0; i < rw.lower.size(); ++i) {
            if (rw.lower[i] == to_lower(root_tense.head_verb)) {
                head_pos = i;
                break;
            }
        }
        std::string object;
        for (std::size_t i = head_pos + 1; i < rw.lower.size(); ++i) {
            if (rw.number[i] || !is_content_word(lx, rw.lower[i])) continue;
            if (lx.is_eventive_verb(rw.lower[i])) continue;
            object = rw.lower[i];
            break;
        }
        std::string core = object.empty() ? gerund(root_tense.head_verb)
                                          : singularize(object) + " " + gerund(root_tense.head_verb);
        desc_a = agent.empty() ? core : agent + "'s " + core;
    } else {
        // Stative opener: subject inventory.
        std::string subject;
        int taken = 0;
        for (std::size_t i = 0; i < rw.lower.size() && taken < 3; ++i) {
            if (rw.lower[i] == to_lower(root_tense.head_verb)) break;
            if (rw.number[i] || !is_content_word(lx, rw.lower[i])) continue;
            if (!subject.empty()) subject += " ";
            subject += rw.lower[i];
            ++taken;
        }
        if (subject.empty()) subject = agent.empty() ? "problem" : agent;
        desc_a = subject + " inventory";
    }
    out.topics.push_back({"topic-a", desc_a});

    // topic-b: first side-attached premise, else the second premise of the
    // chain when the problem has more than one statement premise.
    int side_target = 0;
    int side_source = 0;
    for (const RelationEdge& e : edges) {
        if (e.relation == Relation::elaboration || e.relation == Relation::background) {
            side_target = e.target;
            side_source = e.source;
            break;
        }
    }
    int statement_count = 0;
    for (const Premise& p : premises) {
        if (!p.is_query) ++statement_count;
    }

    std::string desc_b;
    if (side_target != 0) {
        const Premise& side = premises[static_cast<std::size_t>(side_target - 1)];
        Eventuality ev = infer_eventuality(side, lx);
        desc_b = ev.summary;
        if (!side.markers.day && side_source >= 1 &&
            premises[static_cast<std::size_t>(side_source - 1)].markers.day) {
            desc_b += " on " + weekday_name(
                                   *premises[static_cast<std::size_t>(side_source - 1)].markers.day);
        }
    } else if (statement_count >= 2) {
        Eventuality ev = infer_eventuality(premises[1], lx);
        desc_b = ev.summary;
    }
    if (!desc_b.empty()) {
        out.topics.push_back({"topic-b", desc_b});
        out.topic_relation = TopicRelation{"topic-a", Relation::elaboration, "topic-b"};
    }
    return out;
}

}  // namespace gsmds
