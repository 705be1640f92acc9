#include "gsmds/textutil.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace gsmds {

namespace {

bool is_word_char(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) != 0;
}

bool is_digit(char c) {
    return std::isdigit(static_cast<unsigned char>(c)) != 0;
}

constexpr std::array<std::string_view, 10> kAbbreviations = {
    "mr", "mrs", "ms", "dr", "st", "e.g", "i.e", "etc", "vs", "no",
};

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        char c = text[i];
        if (is_word_char(c)) {
            std::size_t j = i + 1;
            while (j < n) {
                if (is_word_char(text[j])) {
                    ++j;
                    continue;
                }
                // ASCII apostrophe followed by a letter stays in the token.
                if (text[j] == '\'' && j + 1 < n && is_word_char(text[j + 1])) {
                    j += 2;
                    continue;
                }
                // UTF-8 right single quotation mark U+2019 (e2 80 99).
                if (static_cast<unsigned char>(text[j]) == 0xE2 && j + 2 < n &&
                    static_cast<unsigned char>(text[j + 1]) == 0x80 &&
                    static_cast<unsigned char>(text[j + 2]) == 0x99 && j + 3 < n &&
                    is_word_char(text[j + 3])) {
                    j += 4;
                    continue;
                }
                break;
            }
            tokens.push_back({i, j, text.substr(i, j - i), true, false});
            i = j;
        } else if (is_digit(c)) {
            std::size_t j = i + 1;
            while (j < n) {
                if (is_digit(text[j])) {
                    ++j;
                } else if ((text[j] == ',' || text[j] == '.' || text[j] == '/') && j + 1 < n &&
                           is_digit(text[j + 1])) {
                    j += 2;
                } else if (text[j] == '%') {
                    ++j;
                    break;
                } else {
                    break;
                }
            }
            tokens.push_back({i, j, text.substr(i, j - i), false, true});
            i = j;
        } else {
            ++i;
        }
    }
    return tokens;
}

std::vector<Sentence> split_sentences(std::string_view text) {
    std::vector<Sentence> sentences;
    const std::size_t n = text.size();
    std::size_t begin = 0;
    while (begin < n && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;

    for (std::size_t i = begin; i < n; ++i) {
        char c = text[i];
        if (c != '.' && c != '!' && c != '?') continue;

        // Consume a run of terminators ("?!", "...").
        std::size_t term_end = i;
        while (term_end + 1 < n &&
               (text[term_end + 1] == '.' || text[term_end + 1] == '!' || text[term_end + 1] == '?' ||
                text[term_end + 1] == '"')) {
            ++term_end;
        }

        if (c == '.') {
            // Decimal point or numbered list: "2.5".
            if (term_end + 1 < n && is_digit(text[term_end + 1])) continue;
            // Abbreviation stoplist.
            std::size_t w = i;
            while (w > begin && (is_word_char(text[w - 1]) || text[w - 1] == '.')) --w;
            std::string word = to_lower(text.substr(w, i - w));
            if (std::find(kAbbreviations.begin(), kAbbreviations.end(), word) != kAbbreviations.end()) {
                continue;
            }
        }

        std::size_t next = term_end + 1;
        while (next < n && std::isspace(static_cast<unsigned char>(text[next]))) ++next;
        bool at_end = next >= n;
        bool capital_follows =
            !at_end && (std::isupper(static_cast<unsigned char>(text[next])) || is_digit(text[next]) ||
                        text[next] == '"' || text[next] == '$');
        if (!at_end && !capital_follows) continue;
        if (!at_end && next == term_end + 1) continue;  // no whitespace after terminator

        sentences.push_back({begin, term_end + 1, text.substr(begin, term_end + 1 - begin)});
        begin = next;
        i = term_end;
    }
    if (begin < n) {
        std::size_t end = n;
        while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
        if (end > begin) sentences.push_back({begin, end, text.substr(begin, end - begin)});
    }
    return sentences;
}

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string collapse_whitespace(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool in_space = true;  // leading whitespace dropped
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            in_space = true;
        } else {
            if (in_space && !out.empty()) out.push_back(' ');
            out.push_back(c);
            in_space = false;
        }
    }
    return out;
}

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

bool contains_word(std::string_view haystack, std::string_view needle) {
    if (needle.empty()) return false;
    std::string h = to_lower(haystack);
    std::string n = to_lower(needle);
    std::size_t pos = 0;
    while ((pos = h.find(n, pos)) != std::string::npos) {
        bool left_ok = pos == 0 || !(std::isalnum(static_cast<unsigned char>(h[pos - 1])));
        std::size_t after = pos + n.size();
        bool right_ok = after >= h.size() || !(std::isalnum(static_cast<unsigned char>(h[after])));
        if (left_ok && right_ok) return true;
        ++pos;
    }
    return false;
}

bool starts_with_upper(std::string_view token) {
    return !token.empty() && std::isupper(static_cast<unsigned char>(token.front())) != 0;
}

std::string match_case(std::string_view source, std::string_view replacement) {
    std::string out(replacement);
    if (starts_with_upper(source) && !out.empty()) {
        out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
    }
    return out;
}

}  // namespace gsmds
