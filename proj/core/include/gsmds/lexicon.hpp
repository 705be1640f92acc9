#pragma once
// Versioned marker lexicon: temporal adverbials, weekday and ordinal tables,
// spelled-out numbers, and the small verb lists the tense classifier needs.
// An override file (TSV: surface <tab> category) can extend the embedded
// table.

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "gsmds/model.hpp"

namespace gsmds {

struct lexicon_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class MarkerLexicon {
  public:
    // Embedded table, version "1".
    static const MarkerLexicon& embedded();

    // Copy of the embedded table plus entries from a TSV override file.
    // Recognized categories: every temporal adverbial name, "contrast",
    // "stative_verb", "eventive_verb".
    static MarkerLexicon with_overrides(const std::string& tsv_path);

    const std::string& version() const { return version_; }

    // Multi-word phrases first, longest match. `tokens` are lowercased words.
    std::optional<TemporalAdverbial> temporal_at(const std::vector<std::string>& tokens,
                                                 std::size_t pos, std::size_t* consumed) const;

    std::optional<int> weekday(std::string_view word) const;   // Sunday=0..Saturday=6
    std::optional<int> ordinal(std::string_view word) const;   // first=1..tenth=10
    std::optional<int> spelled_number(std::string_view word) const;  // one..twenty

    bool is_contrast_marker(std::string_view word) const;
    bool is_duration_unit(std::string_view word) const;  // minutes/hours/days/...

    bool is_be_form(std::string_view word) const;
    bool is_have_form(std::string_view word) const;
    bool is_stative_verb(std::string_view word) const;
    bool is_eventive_verb(std::string_view word) const;  // handles s/ed/ing inflection
    bool is_irregular_participle(std::string_view word) const;
    bool is_modal(std::string_view word) const;

    // Capitalized words that never name an agent (articles, pronouns,
    // adverbials, weekdays, months).
    bool is_agent_stopword(std::string_view word) const;

  private:
    MarkerLexicon() = default;
    void add_override(const std::string& surface, const std::string& category);

    std::string version_;
    std::vector<std::pair<std::vector<std::string>, TemporalAdverbial>> temporal_phrases_;
    std::unordered_map<std::string, int> weekdays_;
    std::unordered_map<std::string, int> ordinals_;
    std::unordered_map<std::string, int> spelled_;
    std::unordered_set<std::string> contrast_;
    std::unordered_set<std::string> duration_units_;
    std::unordered_set<std::string> be_forms_;
    std::unordered_set<std::string> have_forms_;
    std::unordered_set<std::string> stative_verbs_;
    std::unordered_set<std::string> eventive_verbs_;
    std::unordered_set<std::string> irregular_participles_;
    std::unordered_set<std::string> modals_;
    std::unordered_set<std::string> agent_stopwords_;
};

}  // namespace gsmds
