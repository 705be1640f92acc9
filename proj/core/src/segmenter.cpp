#include "gsmds/segmenter.hpp"

#include <algorithm>
#include <cctype>

#include "gsmds/textutil.hpp"

namespace gsmds {

namespace {

bool ends_with(std::string_view w, std::string_view suffix) {
    return w.size() >= suffix.size() && w.compare(w.size() - suffix.size(), suffix.size(), suffix) == 0;
}

bool looks_like_participle(const MarkerLexicon& lx, std::string_view w) {
    return lx.is_irregular_participle(w) || (w.size() > 3 && ends_with(w, "ed"));
}

}  // namespace

TenseAnalysis classify_tense(std::string_view clause, const MarkerLexicon& lx) {
    const std::vector<Token> tokens = tokenize(clause);
    std::vector<std::string> words;
    for (const Token& t : tokens) {
        if (t.is_word) words.push_back(to_lower(t.text));
    }

    static const std::unordered_set<std::string> kSkippableAdverbs = {
        "already", "just", "also", "recently", "then", "never", "not", "previously"};

    for (std::size_t i = 0; i < words.size(); ++i) {
        const std::string& w = words[i];
        if (lx.is_have_form(w)) {
            std::size_t j = i + 1;
            while (j < words.size() && kSkippableAdverbs.count(words[j]) > 0) ++j;
            if (j < words.size() && looks_like_participle(lx, words[j])) {
                if (w == "had") return {TenseClass::past_perfect, words[j], true};
                return {TenseClass::active_eventive, words[j], true};
            }
            return {TenseClass::stative, w, true};
        }
        if (lx.is_be_form(w)) {
            // Stative unless the predicate contains an eventive verb or a
            // progressive form.
            for (std::size_t j = i + 1; j < words.size(); ++j) {
                if (lx.is_eventive_verb(words[j]) ||
                    (words[j].size() > 4 && ends_with(words[j], "ing"))) {
                    return {TenseClass::active_eventive, words[j], true};
                }
            }
            return {TenseClass::stative, w, true};
        }
        if (lx.is_stative_verb(w)) return {TenseClass::stative, w, true};
        if (lx.is_modal(w)) continue;
        if (lx.is_eventive_verb(w)) return {TenseClass::active_eventive, w, true};
    }
    return {TenseClass::active_eventive, "", false};
}

MarkerAnnotation annotate_markers(std::string_view premise_text, const MarkerLexicon& lx) {
    MarkerAnnotation m;
    const std::vector<Token> tokens = tokenize(premise_text);
    std::vector<std::string> words;
    std::vector<bool> word_is_number;
    for (const Token& t : tokens) {
        if (t.is_word || t.is_number) {
            words.push_back(to_lower(t.text));
            word_is_number.push_back(t.is_number);
        }
    }

    // Temporal adverbials, first hit wins. "next <unit>" and "next <weekday>"
    // are time references, not the sequencing adverbial.
    for (std::size_t i = 0; i < words.size() && !m.temporal; ++i) {
        std::size_t consumed = 0;
        auto hit = lx.temporal_at(words, i, &consumed);
        if (!hit) continue;
        if (*hit == TemporalAdverbial::next && i + 1 < words.size() &&
            (lx.is_duration_unit(words[i + 1]) || lx.weekday(words[i + 1]))) {
            continue;
        }
        m.temporal = *hit;
    }

    // "<number> <unit> later|before" and bare trailing "before".
    if (!m.temporal) {
        for (std::size_t i = 0; i + 2 < words.size(); ++i) {
            bool numeric = word_is_number[i] || lx.spelled_number(words[i]).has_value();
            if (!numeric || !lx.is_duration_unit(words[i + 1])) continue;
            if (words[i + 2] == "later") m.temporal = TemporalAdverbial::later;
            if (words[i + 2] == "before") m.temporal = TemporalAdverbial::before;
        }
    }
    if (!m.temporal && !words.empty() && words.back() == "before") {
        m.temporal = TemporalAdverbial::before;
    }

    // Clause-initial ordinal ("First, ...", "And second, ...").
    {
        std::size_t lead = 0;
        if (!words.empty() && words[0] == "and") lead = 1;
        if (lead < words.size()) {
            if (auto ord = lx.ordinal(words[lead])) {
                m.ordinal = *ord;
                if (*ord == 1 && !m.temporal) m.temporal = TemporalAdverbial::first;
            }
            if (words[lead] == "initially" && !m.ordinal) m.ordinal = 1;
        }
    }
    // "finally/initially" anywhere already handled by the phrase table; keep
    // the at-most-one-of {finally, first} invariant by preferring the
    // clause-initial reading.
    if (m.temporal == TemporalAdverbial::finally_ && m.ordinal && *m.ordinal == 1) {
        m.ordinal.reset();
    }

    // Weekday: first mention.
    for (const std::string& w : words) {
        if (auto d = lx.weekday(w)) {
            m.day = *d;
            break;
        }
    }

    // Contrast: clause introduced by but/although.
    if (!words.empty() && lx.is_contrast_marker(words[0])) m.contrast = true;

    TenseAnalysis tense = classify_tense(premise_text, lx);
    m.tense = tense.tense;
    return m;
}

std::vector<QuantitySpan> extract_quantities(std::string_view text, const MarkerLexicon& lx) {
    std::vector<QuantitySpan> spans;
    const std::vector<Token> tokens = tokenize(text);

    auto push = [&](std::size_t start, std::size_t end, Rational value, QuantityKind kind) {
        spans.push_back({start, end, std::string(text.substr(start, end - start)), value, kind});
    };

    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const Token& t = tokens[i];
        if (t.is_number) {
            std::string surface(t.text);
            if (surface.find('%') != std::string::npos) {
                auto v = Rational::parse(surface);
                if (v) push(t.start, t.end, *v, QuantityKind::percentage);
                continue;
            }
            if (surface.find('/') != std::string::npos) {
                auto v = Rational::parse(surface);
                if (v) push(t.start, t.end, *v, QuantityKind::fraction);
                continue;
            }
            auto v = Rational::parse(surface);
            if (!v) continue;
            // "<n> times" is a multiplier.
            if (i + 1 < tokens.size() && tokens[i + 1].is_word &&
                to_lower(tokens[i + 1].text) == "times") {
                push(t.start, tokens[i + 1].end, *v, QuantityKind::multiplier);
                ++i;
                continue;
            }
            push(t.start, t.end, *v, QuantityKind::count_or_magnitude);
            continue;
        }
        if (!t.is_word) continue;
        std::string w = to_lower(t.text);

        auto strip_verb_suffix = [&](std::string_view base) {
            return w == base || w == std::string(base) + "s" || w == std::string(base) + "d" ||
                   w == std::string(base) + "es";
        };
        if (strip_verb_suffix("double") || w == "doubled" || w == "doubling") {
            push(t.start, t.end, Rational(2), QuantityKind::multiplier);
            continue;
        }
        if (strip_verb_suffix("triple") || w == "tripled" || w == "tripling") {
            push(t.start, t.end, Rational(3), QuantityKind::multiplier);
            continue;
        }
        if (strip_verb_suffix("quadruple") || w == "quadrupled") {
            push(t.start, t.end, Rational(4), QuantityKind::multiplier);
            continue;
        }
        if (w == "twice") {
            push(t.start, t.end, Rational(2), QuantityKind::multiplier);
            continue;
        }
        if (w == "half" || w == "halves") {
            push(t.start, t.end, Rational(1, 2), QuantityKind::fraction);
            continue;
        }
        if (w == "quarter" || w == "quarters") {
            push(t.start, t.end, Rational(1, 4), QuantityKind::fraction);
            continue;
        }
        // "a third of" is a fraction; clause positions like "Third, ..." stay
        // ordinal labels.
        if (auto ord = lx.ordinal(w)) {
            bool preceded_by_article =
                i > 0 && tokens[i - 1].is_word &&
                (to_lower(tokens[i - 1].text) == "a" || to_lower(tokens[i - 1].text) == "one");
            if (preceded_by_article && *ord >= 2) {
                push(t.start, t.end, Rational(1, *ord), QuantityKind::fraction);
            } else {
                push(t.start, t.end, Rational(*ord), QuantityKind::ordinal_label);
            }
            continue;
        }
        if (auto num = lx.spelled_number(w)) {
            if (i + 1 < tokens.size() && tokens[i + 1].is_word &&
                to_lower(tokens[i + 1].text) == "times") {
                push(t.start, tokens[i + 1].end, Rational(*num), QuantityKind::multiplier);
                ++i;
            } else {
                push(t.start, t.end, Rational(*num), QuantityKind::count_or_magnitude);
            }
            continue;
        }
    }
    return spans;
}

std::string detect_agent(std::string_view text, const MarkerLexicon& lx) {
    for (const Token& t : tokenize(text)) {
        if (!t.is_word) continue;
        if (!starts_with_upper(t.text)) continue;
        if (lx.is_agent_stopword(t.text)) continue;
        std::string word(t.text);
        // Strip a possessive suffix ("Oliver's" -> "Oliver").
        if (word.size() > 2 && word.compare(word.size() - 2, 2, "'s") == 0) {
            word.resize(word.size() - 2);
        }
        return word;
    }
    return "";
}

namespace {

// Query rephrasing: "How many kiwis does Oliver have?" becomes
// "Oliver wants to know how many kiwis does Oliver have."
std::string rephrase_query(const Problem& p, const MarkerLexicon& lx) {
    std::string q = trim(p.question);
    if (q.empty() || q.back() != '?') return q;  // declarative query kept verbatim
    q.pop_back();
    q = trim(q);
    if (!q.empty()) q[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(q[0])));
    std::string agent = detect_agent(p.body, lx);
    if (agent.empty()) return "They want to know " + q + ".";
    return agent + " wants to know " + q + ".";
}

struct ClauseSplit {
    std::string first;
    std::string second;
};

// ", but"/", and" boundary where the conjuncts disagree in tense class.
std::optional<ClauseSplit> find_tense_shift_split(std::string_view sentence,
                                                  const MarkerLexicon& lx) {
    const std::vector<Token> tokens = tokenize(sentence);
    for (std::size_t i = 1; i < tokens.size(); ++i) {
        const Token& t = tokens[i];
        if (!t.is_word) continue;
        std::string w = to_lower(t.text);
        if (w != "but" && w != "and") continue;
        // A comma must directly precede the conjunction.
        std::size_t k = t.start;
        bool comma = false;
        while (k > 0) {
            char c = sentence[--k];
            if (c == ',') {
                comma = true;
                break;
            }
            if (!std::isspace(static_cast<unsigned char>(c))) break;
        }
        if (!comma) continue;

        std::string first = trim(sentence.substr(0, t.start));
        std::string second = trim(sentence.substr(t.start));
        TenseAnalysis a = classify_tense(first, lx);
        TenseAnalysis b = classify_tense(second, lx);
        if (!a.has_verb || !b.has_verb) continue;
        if (a.tense != b.tense) return ClauseSplit{first, second};
    }
    return std::nullopt;
}

}  // namespace

SegmentResult segment(const Problem& problem, const MarkerLexicon& lx) {
    const std::string& body = problem.body;
    bool has_word = false;
    for (const Token& t : tokenize(body)) {
        if (t.is_word || t.is_number) {
            has_word = true;
            break;
        }
    }
    if (!has_word) throw EmptyBody("problem body has no words");

    SegmentResult result;
    std::vector<std::string> clause_texts;
    for (const Sentence& s : split_sentences(body)) {
        if (auto split = find_tense_shift_split(s.text, lx)) {
            clause_texts.push_back(split->first);
            clause_texts.push_back(split->second);
        } else {
            clause_texts.push_back(trim(s.text));
        }
    }
    clause_texts.push_back(rephrase_query(problem, lx));

    for (std::size_t i = 0; i < clause_texts.size(); ++i) {
        Premise p;
        p.index = static_cast<int>(i) + 1;
        p.text = clause_texts[i];
        p.markers = annotate_markers(p.text, lx);
        p.quantities = extract_quantities(p.text, lx);
        p.is_query = i + 1 == clause_texts.size();
        result.premises.push_back(std::move(p));
    }

    // Flag number-like words the extractor does not handle.
    static const char* kUnhandled[] = {"dozen", "hundred", "thousand", "million", "billion"};
    for (const Premise& p : result.premises) {
        for (const char* w : kUnhandled) {
            if (contains_word(p.text, w)) {
                result.notes.push_back("P" + std::to_string(p.index) +
                                       ": number word left unextracted: " + w);
            }
        }
    }
    return result;
}

}  // namespace gsmds
