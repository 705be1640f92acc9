#pragma once
// Small text machinery shared by the segmenter, the dataset loader and the
// perturbation operators: offset-preserving tokenization and rule-based
// sentence splitting for simple prose.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace gsmds {

struct Token {
    std::size_t start = 0;
    std::size_t end = 0;  // exclusive
    std::string_view text;

    bool is_word = false;    // letters, may contain internal apostrophe
    bool is_number = false;  // digits, may contain , . / %
};

// Word and number tokens only; punctuation is skipped but offsets are exact.
// Apostrophes stay attached ("Larry's", "won't"); hyphens split ("60-foot"
// yields "60" and "foot").
std::vector<Token> tokenize(std::string_view text);

struct Sentence {
    std::size_t start = 0;
    std::size_t end = 0;  // exclusive
    std::string_view text;
};

// Boundary is {. ! ?} followed by whitespace and a capital or digit, with a
// short abbreviation stoplist (Mr., Dr., e.g., ...). Decimal points never
// split.
std::vector<Sentence> split_sentences(std::string_view text);

std::string to_lower(std::string_view s);
std::string collapse_whitespace(std::string_view s);
std::string trim(std::string_view s);

// True when `needle` occurs in `haystack` delimited by non-alphanumerics.
// Case-insensitive. Multi-word needles match across single spaces.
bool contains_word(std::string_view haystack, std::string_view needle);

bool starts_with_upper(std::string_view token);

// Copies .s/.es/.ed/.d/.ing capitalization and inflection from `source` onto
// `replacement` when `replacement` is given in base form. Used by the lexical
// perturbation operator.
std::string match_case(std::string_view source, std::string_view replacement);

}  // namespace gsmds
