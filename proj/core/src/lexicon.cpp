#include "gsmds/lexicon.hpp"

#include <fstream>
#include <sstream>

#include "gsmds/textutil.hpp"

namespace gsmds {

namespace {

std::vector<std::string> split_phrase(std::string_view phrase) {
    std::vector<std::string> words;
    std::istringstream in{std::string(phrase)};
    std::string w;
    while (in >> w) words.push_back(to_lower(w));
    return words;
}

}  // namespace

const MarkerLexicon& MarkerLexicon::embedded() {
    static const MarkerLexicon instance = [] {
        MarkerLexicon lx;
        lx.version_ = "1";

        auto phrase = [&](std::string_view p, TemporalAdverbial t) {
            lx.temporal_phrases_.emplace_back(split_phrase(p), t);
        };
        // Longest phrases first so multi-word markers win.
        phrase("in the past", TemporalAdverbial::in_the_past);
        phrase("after that", TemporalAdverbial::after_that);
        phrase("then", TemporalAdverbial::then);
        phrase("next", TemporalAdverbial::next);
        phrase("subsequently", TemporalAdverbial::subsequently);
        phrase("while", TemporalAdverbial::while_);
        phrase("later", TemporalAdverbial::later);
        phrase("afterwards", TemporalAdverbial::later);
        phrase("finally", TemporalAdverbial::finally_);
        phrase("initially", TemporalAdverbial::initially);
        phrase("previously", TemporalAdverbial::previously);

        const char* days[] = {"sunday", "monday", "tuesday", "wednesday",
                              "thursday", "friday", "saturday"};
        for (int i = 0; i < 7; ++i) lx.weekdays_[days[i]] = i;

        const char* ords[] = {"first", "second", "third", "fourth", "fifth",
                              "sixth", "seventh", "eighth", "ninth", "tenth"};
        for (int i = 0; i < 10; ++i) lx.ordinals_[ords[i]] = i + 1;

        const char* nums[] = {"one", "two", "three", "four", "five", "six", "seven",
                              "eight", "nine", "ten", "eleven", "twelve", "thirteen",
                              "fourteen", "fifteen", "sixteen", "seventeen", "eighteen",
                              "nineteen", "twenty"};
        for (int i = 0; i < 20; ++i) lx.spelled_[nums[i]] = i + 1;

        lx.contrast_ = {"but", "although", "though", "however", "yet"};
        lx.duration_units_ = {"minute", "minutes", "hour", "hours", "day", "days",
                              "week", "weeks", "month", "months", "year", "years"};

        lx.be_forms_ = {"is", "are", "was", "were", "am", "be", "been", "being"};
        lx.have_forms_ = {"has", "have", "had"};
        lx.stative_verbs_ = {"seem", "seems", "seemed", "weigh", "weighs", "weighed",
                             "own", "owns", "owned"};
        lx.modals_ = {"will", "would", "can", "could", "shall", "should", "may",
                      "might", "must", "wont", "won't", "cannot", "can't"};

        // Base forms; is_eventive_verb also strips s/es/ed/d/ing.
        lx.eventive_verbs_ = {
            "pick",    "go",      "add",     "buy",     "make",    "use",      "convert",
            "lose",    "withdraw","do",      "record",  "look",    "see",      "skip",
            "come",    "give",    "collect", "convince","get",     "eat",      "plate",
            "cook",    "jump",    "write",   "pour",    "place",   "create",   "send",
            "triple",  "double",  "take",    "walk",    "run",     "read",     "pay",
            "sell",    "spend",   "win",     "build",   "keep",    "hold",     "meet",
            "put",     "cut",     "let",     "set",     "tell",    "begin",    "drink",
            "drive",   "fly",     "grow",    "throw",   "wear",    "break",    "choose",
            "ride",    "rise",    "speak",   "steal",   "wake",    "fall",     "hide",
            "sit",     "stand",   "catch",   "teach",   "bring",   "fight",    "hear",
            "sleep",   "decide",  "try",     "turn",    "give",    "want",     "need",
            "beat",    "exceed",  "surpass", "examine", "notice",  "document", "perform",
            "accomplish", "omit", "complete","intend",  "ensure",  "help",     "repair",
            "bake",    "plant",   "count",   "save",    "earn",    "deposit",  "borrow",
            "return",  "fill",    "empty",   "wash",    "clean",   "paint",    "fix",
            "drop",    "carry",   "move",    "open",    "close",   "start",    "finish",
            "work",    "play",    "swim",    "climb",   "travel",  "visit",    "leave",
            "arrive",  "stay",    "wait",    "call",    "ask",     "answer",   "solve",
            "split",   "share",   "divide",  "multiply","increase","decrease", "gather",
        };
        lx.irregular_participles_ = {
            "done",  "gone",   "eaten",  "taken",  "been",  "seen",   "bought", "made",
            "lost",  "left",   "given",  "gotten", "won",   "built",  "sent",   "kept",
            "held",  "met",    "put",    "cut",    "let",   "set",    "told",   "begun",
            "drunk", "driven", "flown",  "grown",  "thrown","worn",   "written","broken",
            "chosen","ridden", "risen",  "spoken", "stolen","woken",  "fallen", "hidden",
            "sat",   "stood",  "caught", "taught", "brought","fought","heard",  "slept",
            "picked","added",  "used",   "recorded","paid", "sold",   "spent",  "come",
        };
        // Words that are past-tense eventives even though they do not end in
        // -ed; reuse the participle list plus a few past forms.
        for (const char* w : {"went", "did", "ate", "saw", "took", "got", "came",
                              "gave", "found", "ran", "wrote", "drew", "knew", "threw",
                              "bought", "lost", "made", "paid", "sold", "spent"}) {
            lx.eventive_verbs_.insert(w);
        }

        lx.agent_stopwords_ = {
            "the",  "a",     "an",    "he",    "she",   "they",  "it",     "we",    "i",
            "you",  "his",   "her",   "their", "its",   "our",   "this",   "that",  "these",
            "those","there", "on",    "in",    "at",    "if",    "but",    "and",   "then",
            "next", "finally","first","second","third", "initially",      "after", "before",
            "while","when",  "what",  "how",   "who",   "where", "why",    "which", "even",
            "so",   "now",   "last",  "every", "each",  "some",  "all",    "during","among",
            "however",       "although",       "though","once",  "to",     "for",   "with",
            "by",   "from",  "of",    "since", "until", "unless","because","given",
            "sunday","monday","tuesday","wednesday","thursday","friday","saturday",
            "january","february","march","april","may","june","july","august",
            "september","october","november","december",
        };
        return lx;
    }();
    return instance;
}

MarkerLexicon MarkerLexicon::with_overrides(const std::string& tsv_path) {
    MarkerLexicon lx = embedded();
    std::ifstream in(tsv_path);
    if (!in) throw lexicon_error("cannot open marker override file: " + tsv_path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string trimmed = trim(line);
        if (trimmed.empty() || trimmed[0] == '#') continue;
        auto tab = trimmed.find('\t');
        if (tab == std::string::npos) {
            throw lexicon_error("marker override line " + std::to_string(lineno) +
                                ": expected 'surface<TAB>category'");
        }
        std::string surface = trim(trimmed.substr(0, tab));
        std::string category = to_lower(trim(trimmed.substr(tab + 1)));
        if (surface.empty() || category.empty()) {
            throw lexicon_error("marker override line " + std::to_string(lineno) +
                                ": empty surface or category");
        }
        lx.add_override(surface, category);
    }
    lx.version_ += "+overrides";
    return lx;
}

void MarkerLexicon::add_override(const std::string& surface, const std::string& category) {
    static const std::unordered_map<std::string, TemporalAdverbial> kTemporal = {
        {"then", TemporalAdverbial::then},
        {"next", TemporalAdverbial::next},
        {"after_that", TemporalAdverbial::after_that},
        {"subsequently", TemporalAdverbial::subsequently},
        {"while", TemporalAdverbial::while_},
        {"later", TemporalAdverbial::later},
        {"before", TemporalAdverbial::before},
        {"finally", TemporalAdverbial::finally_},
        {"first", TemporalAdverbial::first},
        {"initially", TemporalAdverbial::initially},
        {"previously", TemporalAdverbial::previously},
        {"in_the_past", TemporalAdverbial::in_the_past},
    };
    auto it = kTemporal.find(category);
    if (it != kTemporal.end()) {
        // Longer phrases must win: insert in front so overrides take priority.
        temporal_phrases_.insert(temporal_phrases_.begin(), {split_phrase(surface), it->second});
        return;
    }
    std::string word = to_lower(surface);
    if (category == "contrast") {
        contrast_.insert(word);
    } else if (category == "stative_verb") {
        stative_verbs_.insert(word);
    } else if (category == "eventive_verb") {
        eventive_verbs_.insert(word);
    } else {
        throw lexicon_error("unknown marker override category: " + category);
    }
}

std::optional<TemporalAdverbial> MarkerLexicon::temporal_at(const std::vector<std::string>& tokens,
                                                            std::size_t pos,
                                                            std::size_t* consumed) const {
    for (const auto& [phrase, kind] : temporal_phrases_) {
        if (pos + phrase.size() > tokens.size()) continue;
        bool match = true;
        for (std::size_t i = 0; i < phrase.size(); ++i) {
            if (tokens[pos + i] != phrase[i]) {
                match = false;
                break;
            }
        }
        if (match) {
            if (consumed) *consumed = phrase.size();
            return kind;
        }
    }
    return std::nullopt;
}

std::optional<int> MarkerLexicon::weekday(std::string_view word) const {
    auto it = weekdays_.find(to_lower(word));
    if (it == weekdays_.end()) return std::nullopt;
    return it->second;
}

std::optional<int> MarkerLexicon::ordinal(std::string_view word) const {
    auto it = ordinals_.find(to_lower(word));
    if (it == ordinals_.end()) return std::nullopt;
    return it->second;
}

std::optional<int> MarkerLexicon::spelled_number(std::string_view word) const {
    auto it = spelled_.find(to_lower(word));
    if (it == spelled_.end()) return std::nullopt;
    return it->second;
}

bool MarkerLexicon::is_contrast_marker(std::string_view word) const {
    return contrast_.count(to_lower(word)) > 0;
}

bool MarkerLexicon::is_duration_unit(std::string_view word) const {
    return duration_units_.count(to_lower(word)) > 0;
}

bool MarkerLexicon::is_be_form(std::string_view word) const {
    std::string w = to_lower(word);
    if (be_forms_.count(w) > 0) return true;
    // Contracted "there's" / "it's" / "she's".
    if (w.size() > 2 && w.compare(w.size() - 2, 2, "'s") == 0) {
        std::string stem = w.substr(0, w.size() - 2);
        return stem == "there" || stem == "it" || stem == "he" || stem == "she" ||
               stem == "that" || stem == "what";
    }
    return false;
}

bool MarkerLexicon::is_have_form(std::string_view word) const {
    return have_forms_.count(to_lower(word)) > 0;
}

bool MarkerLexicon::is_stative_verb(std::string_view word) const {
    return stative_verbs_.count(to_lower(word)) > 0;
}

bool MarkerLexicon::is_eventive_verb(std::string_view word) const {
    std::string w = to_lower(word);
    if (eventive_verbs_.count(w) > 0) return true;
    auto try_stem = [&](std::size_t strip, const char* suffix_add) {
        if (w.size() <= strip) return false;
        std::string stem = w.substr(0, w.size() - strip) + suffix_add;
        return eventive_verbs_.count(stem) > 0;
    };
    // walks -> walk, uses -> use, tries -> try, picked -> pick, used -> use,
    // running -> run(?), making -> make
    if (w.size() > 2 && w.back() == 's') {
        if (try_stem(1, "")) return true;
        if (w.size() > 3 && w.compare(w.size() - 3, 3, "ies") == 0 && try_stem(3, "y")) return true;
        if (w.size() > 2 && w.compare(w.size() - 2, 2, "es") == 0 && try_stem(2, "")) return true;
    }
    if (w.size() > 3 && w.compare(w.size() - 2, 2, "ed") == 0) {
        if (try_stem(2, "")) return true;       // picked
        if (try_stem(1, "")) return true;       // used
        if (try_stem(3, "y")) return true;      // tried
        if (w.size() > 4 && w[w.size() - 3] == w[w.size() - 4] && try_stem(3, "")) return true;  // skipped
    }
    if (w.size() > 4 && w.compare(w.size() - 3, 3, "ing") == 0) {
        if (try_stem(3, "")) return true;       // picking
        if (try_stem(3, "e")) return true;      // making
        if (w.size() > 5 && w[w.size() - 4] == w[w.size() - 5] && try_stem(4, "")) return true;  // running
    }
    return false;
}

bool MarkerLexicon::is_irregular_participle(std::string_view word) const {
    return irregular_participles_.count(to_lower(word)) > 0;
}

bool MarkerLexicon::is_modal(std::string_view word) const {
    std::string w = to_lower(word);
    if (modals_.count(w) > 0) return true;
    return w.size() > 3 && w.compare(w.size() - 3, 3, "'ll") == 0;
}

bool MarkerLexicon::is_agent_stopword(std::string_view word) const {
    return agent_stopwords_.count(to_lower(word)) > 0;
}

}  // namespace gsmds
