#include "gsmds/perturb.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "gsmds/segmenter.hpp"
#include "gsmds/textutil.hpp"

namespace gsmds {

namespace {

std::string decimal_or_ratio(const Rational& v) {
    if (v.is_integer()) return v.str();
    // Terminating decimal when the denominator is 2^a * 5^b, else keep a/b.
    std::int64_t den = v.den();
    while (den % 2 == 0) den /= 2;
    while (den % 5 == 0) den /= 5;
    if (den != 1) return v.str();
    std::int64_t num = v.num();
    bool neg = num < 0;
    if (neg) num = -num;
    std::int64_t whole = num / v.den();
    std::int64_t rem = num % v.den();
    std::string digits;
    while (rem != 0 && digits.size() < 18) {
        rem *= 10;
        digits.push_back(static_cast<char>('0' + rem / v.den()));
        rem %= v.den();
    }
    std::string out = (neg ? "-" : "") + std::to_string(whole);
    if (!digits.empty()) out += "." + digits;
    return out;
}

}  // namespace

PerturbationSpec parse_perturbation_spec_text(const std::string& text) {
    PerturbationSpec spec;
    bool kind_set = false;
    std::string section;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[' && line.back() == ']') {
            section = to_lower(trim(line.substr(1, line.size() - 2)));
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw perturb_error("spec line " + std::to_string(lineno) + ": expected key = value");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw perturb_error("spec line " + std::to_string(lineno) + ": empty key");
        }
        if (section.empty()) {
            if (to_lower(key) == "kind") {
                auto k = perturbation_kind_from_name(value);
                if (!k) throw perturb_error("unknown perturbation kind: " + value);
                spec.kind = *k;
                kind_set = true;
            } else if (to_lower(key) == "scale_factor" || to_lower(key) == "scale") {
                spec.scale_factor = std::strtoll(value.c_str(), nullptr, 10);
            } else if (to_lower(key) == "allow_large_scale") {
                spec.allow_large_scale = to_lower(value) == "true" || value == "1";
            } else {
                throw perturb_error("spec line " + std::to_string(lineno) + ": unknown key " + key);
            }
        } else if (section == "entity_map") {
            spec.entity_map.emplace_back(key, value);
        } else if (section == "action_map") {
            spec.action_map.emplace_back(key, value);
        } else if (section == "unit_map") {
            spec.unit_map.emplace_back(key, value);
        } else if (section == "value_map") {
            spec.value_map.emplace_back(key, value);
        } else if (section == "lexicon") {
            LexiconEntry entry;
            entry.surface = key;
            auto bar = value.find('|');
            if (bar != std::string::npos) {
                entry.synonym = trim(value.substr(0, bar));
                entry.pos = trim(value.substr(bar + 1));
            } else {
                entry.synonym = value;
            }
            spec.lexicon.push_back(std::move(entry));
        } else {
            throw perturb_error("spec line " + std::to_string(lineno) + ": unknown section " +
                                section);
        }
    }
    if (!kind_set) {
        if (!spec.lexicon.empty()) {
            spec.kind = PerturbationKind::l_mod;
        } else if (spec.scale_factor || !spec.value_map.empty()) {
            spec.kind = PerturbationKind::n_mod;
        } else {
            spec.kind = PerturbationKind::c_mod;
        }
    }
    return spec;
}

PerturbationSpec load_perturbation_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw perturb_error("cannot open perturbation spec: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_perturbation_spec_text(buf.str());
}

namespace {

struct PhraseMatch {
    std::size_t start = 0;
    std::size_t end = 0;
    std::string replacement;
};

// Tokens of `text` matched against multi-word surfaces, longest surface
// first, non-overlapping, case-insensitive. Replacement gets the source's
// leading capitalization.
std::vector<PhraseMatch> match_phrases(
    const std::string& text, const std::vector<std::pair<std::string, std::string>>& mapping) {
    std::vector<Token> tokens = tokenize(text);
    struct Entry {
        std::vector<std::string> words;
        std::string replacement;
    };
    std::vector<Entry> entries;
    for (const auto& [key, value] : mapping) {
        Entry e;
        std::istringstream ks(key);
        std::string w;
        while (ks >> w) e.words.push_back(to_lower(w));
        e.replacement = value;
        if (!e.words.empty()) entries.push_back(std::move(e));
    }
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.words.size() > b.words.size(); });

    std::vector<bool> consumed(tokens.size(), false);
    std::vector<PhraseMatch> matches;
    for (const Entry& e : entries) {
        for (std::size_t i = 0; i + e.words.size() <= tokens.size(); ++i) {
            bool ok = true;
            for (std::size_t k = 0; k < e.words.size(); ++k) {
                if (consumed[i + k] || to_lower(tokens[i + k].text) != e.words[k]) {
                    ok = false;
                    break;
                }
            }
            // Words of one phrase must be adjacent (single spaces between).
            if (ok) {
                for (std::size_t k = 0; k + 1 < e.words.size(); ++k) {
                    std::size_t gap_begin = tokens[i + k].end;
                    std::size_t gap_end = tokens[i + k + 1].start;
                    for (std::size_t g = gap_begin; g < gap_end; ++g) {
                        if (!std::isspace(static_cast<unsigned char>(text[g]))) {
                            ok = false;
                            break;
                        }
                    }
                    if (!ok) break;
                }
            }
            if (!ok) continue;
            for (std::size_t k = 0; k < e.words.size(); ++k) consumed[i + k] = true;
            PhraseMatch m;
            m.start = tokens[i].start;
            m.end = tokens[i + e.words.size() - 1].end;
            m.replacement = match_case(tokens[i].text, e.replacement);
            matches.push_back(std::move(m));
        }
    }
    std::sort(matches.begin(), matches.end(),
              [](const PhraseMatch& a, const PhraseMatch& b) { return a.start < b.start; });
    return matches;
}

std::string apply_matches(const std::string& text, const std::vector<PhraseMatch>& matches,
                          std::vector<std::string>* replacements) {
    std::string out;
    out.reserve(text.size());
    std::size_t pos = 0;
    for (const PhraseMatch& m : matches) {
        out.append(text, pos, m.start - pos);
        if (replacements) {
            replacements->push_back(text.substr(m.start, m.end - m.start) + " -> " + m.replacement);
        }
        out += m.replacement;
        pos = m.end;
    }
    out.append(text, pos, text.size() - pos);
    return out;
}

std::vector<std::string> quantity_surfaces(const std::string& text, const MarkerLexicon& lx) {
    std::vector<std::string> out;
    for (const QuantitySpan& q : extract_quantities(text, lx)) out.push_back(q.surface);
    std::sort(out.begin(), out.end());
    return out;
}

void require_quantities_unchanged(const Problem& before, const Problem& after,
                                  const MarkerLexicon& lx, const char* op) {
    if (quantity_surfaces(before.full_text(), lx) != quantity_surfaces(after.full_text(), lx)) {
        throw NumberTouched(std::string(op) + " changed a quantity surface");
    }
}

void validate_cmod_maps(const Problem& p,
                        const std::vector<std::pair<std::string, std::string>>& mapping) {
    std::set<std::string> values;
    for (const auto& [key, value] : mapping) {
        if (value.empty()) throw perturb_error("empty replacement for '" + key + "'");
        if (!values.insert(to_lower(value)).second) {
            throw perturb_error("replacement '" + value + "' used twice; maps must be injective");
        }
    }
    std::string text = p.full_text();
    for (const auto& [key, value] : mapping) {
        if (contains_word(text, value)) {
            throw OverlapViolation("replacement '" + value +
                                   "' already occurs in the source text");
        }
    }
}

}  // namespace

PerturbResult apply_cmod(const Problem& p, const PerturbationSpec& spec,
                         const MarkerLexicon& lx) {
    std::vector<std::pair<std::string, std::string>> mapping;
    mapping.insert(mapping.end(), spec.entity_map.begin(), spec.entity_map.end());
    mapping.insert(mapping.end(), spec.action_map.begin(), spec.action_map.end());
    mapping.insert(mapping.end(), spec.unit_map.begin(), spec.unit_map.end());
    validate_cmod_maps(p, mapping);

    PerturbResult result;
    result.problem = p;
    result.problem.body = apply_matches(p.body, match_phrases(p.body, mapping), &result.replacements);
    result.problem.question =
        apply_matches(p.question, match_phrases(p.question, mapping), &result.replacements);
    result.problem.provenance = Provenance::c_mod;
    result.problem.parent_id = p.id;
    result.problem.id = p.id + ".c_mod";

    require_quantities_unchanged(p, result.problem, lx, "c_mod");

    // Capitalized mid-sentence tokens with no mapping are probably entities
    // the mapping file missed.
    std::set<std::string> mapped;
    for (const auto& [key, value] : mapping) {
        std::istringstream ks(key);
        std::string w;
        while (ks >> w) mapped.insert(to_lower(w));
    }
    std::set<std::string> flagged;
    std::string text = p.full_text();
    std::vector<Token> tokens = tokenize(text);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const Token& t = tokens[i];
        if (!t.is_word || !starts_with_upper(t.text)) continue;
        bool sentence_initial =
            i == 0 || (t.start >= 2 && (text[t.start - 2] == '.' || text[t.start - 2] == '!' ||
                                        text[t.start - 2] == '?'));
        if (sentence_initial) continue;
        if (lx.is_agent_stopword(t.text)) continue;
        std::string w = to_lower(t.text);
        if (mapped.count(w) > 0) continue;
        if (flagged.insert(w).second) {
            result.warnings.push_back("UnmappedEntity: " + std::string(t.text));
        }
    }
    return result;
}

std::vector<SolutionStep> substitute_solution(
    const std::vector<SolutionStep>& expr,
    const std::vector<std::pair<Rational, Rational>>& substitution) {
    auto substitute = [&](SolutionOperand o) {
        if (o.step_ref || o.pinned) return o;
        for (const auto& [from, to] : substitution) {
            if (o.value == from) {
                o.value = to;
                break;
            }
        }
        return o;
    };
    std::vector<SolutionStep> out;
    out.reserve(expr.size());
    std::vector<Rational> results;
    for (const SolutionStep& step : expr) {
        SolutionStep s = step;
        s.lhs = substitute(step.lhs);
        s.rhs = substitute(step.rhs);
        auto resolve = [&](const SolutionOperand& o) -> Rational {
            if (o.step_ref) {
                int ref = *o.step_ref;
                if (ref < 1 || static_cast<std::size_t>(ref) > results.size()) {
                    throw UnboundOperand("step reference #" + std::to_string(ref) +
                                         " out of range");
                }
                return results[static_cast<std::size_t>(ref - 1)];
            }
            return o.value;
        };
        Rational lhs = resolve(s.lhs);
        Rational rhs = resolve(s.rhs);
        switch (s.op) {
            case ArithOp::add: s.result = lhs + rhs; break;
            case ArithOp::sub: s.result = lhs - rhs; break;
            case ArithOp::mul: s.result = lhs * rhs; break;
            case ArithOp::div:
                if (rhs.is_zero()) throw DivisionByZero("division by zero in solution step");
                s.result = lhs / rhs;
                break;
        }
        results.push_back(s.result);
        out.push_back(std::move(s));
    }
    return out;
}

Rational recompute_gold(const std::vector<SolutionStep>& expr,
                        const std::vector<std::pair<Rational, Rational>>& substitution) {
    if (expr.empty()) throw UnboundOperand("empty solution chain");
    return substitute_solution(expr, substitution).back().result;
}

PerturbResult apply_nmod(const Problem& p, const PerturbationSpec& spec,
                         const MarkerLexicon& lx) {
    if (p.solution_expr.empty()) {
        throw MissingSolution("n_mod needs a solution expression to recompute the gold answer");
    }

    const bool uniform = spec.value_map.empty();
    std::int64_t k = spec.scale_factor.value_or(1);
    if (uniform && k < 1) throw perturb_error("scale factor must be >= 1");
    // Large factors push values out of the corpus magnitude range; opt in
    // explicitly when that is the point.
    if (uniform && k > 10 && !spec.allow_large_scale) {
        throw perturb_error("scale factor " + std::to_string(k) +
                            " exceeds 10; set allow_large_scale to override");
    }

    // Explicit map keys must be distinct numeric surfaces.
    std::map<std::string, std::string> explicit_map;
    for (const auto& [key, value] : spec.value_map) {
        if (!Rational::parse(key) || !Rational::parse(value)) {
            throw perturb_error("value_map entries must be numeric: " + key + " = " + value);
        }
        if (!explicit_map.emplace(key, value).second) {
            throw perturb_error("duplicate value_map key: " + key);
        }
    }

    PerturbResult result;
    result.problem = p;
    std::vector<std::pair<Rational, Rational>> substitution;
    auto note_substitution = [&](const Rational& from, const Rational& to) {
        for (const auto& [f, t] : substitution) {
            if (f == from) {
                if (t != to) {
                    throw perturb_error("conflicting substitutions for value " + from.str());
                }
                return;
            }
        }
        substitution.emplace_back(from, to);
    };

    auto transform_text = [&](const std::string& text) {
        std::vector<PhraseMatch> matches;
        for (const QuantitySpan& q : extract_quantities(text, lx)) {
            if (q.kind != QuantityKind::count_or_magnitude) continue;
            if (uniform) {
                Rational scaled = q.value * Rational(k);
                note_substitution(q.value, scaled);
                if (scaled != q.value) {
                    matches.push_back({q.start, q.end, decimal_or_ratio(scaled)});
                }
            } else {
                auto it = explicit_map.find(q.surface);
                if (it == explicit_map.end()) continue;
                Rational to = *Rational::parse(it->second);
                note_substitution(q.value, to);
                matches.push_back({q.start, q.end, it->second});
            }
        }
        return apply_matches(text, matches, &result.replacements);
    };
    result.problem.body = transform_text(p.body);
    result.problem.question = transform_text(p.question);

    std::vector<SolutionStep> new_expr = substitute_solution(p.solution_expr, substitution);
    // A value that was integral must stay integral.
    for (std::size_t i = 0; i < new_expr.size(); ++i) {
        if (p.solution_expr[i].result.is_integer() && !new_expr[i].result.is_integer()) {
            throw NonIntegerResult("step " + std::to_string(i + 1) + " result becomes " +
                                   new_expr[i].result.str());
        }
    }
    result.problem.solution_expr = std::move(new_expr);
    result.problem.gold_answer = result.problem.solution_expr.back().result;
    result.problem.provenance = Provenance::n_mod;
    result.problem.parent_id = p.id;
    result.problem.id = p.id + ".n_mod";
    return result;
}

namespace {

bool is_vowel(char c) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

// "recorded" against base "record" -> suffix "ed"; empty when no match.
std::optional<std::string> inflection_suffix(const std::string& token, const std::string& base) {
    if (token == base) return std::string("");
    if (token.size() <= base.size() || token.compare(0, base.size(), base) != 0) {
        return std::nullopt;
    }
    std::string rest = token.substr(base.size());
    if (rest == "s" || rest == "es" || rest == "ed" || rest == "d" || rest == "ing") return rest;
    // Doubled final consonant: skip + ped -> ed.
    if (!base.empty() && rest.size() >= 3 && rest[0] == base.back()) {
        std::string tail = rest.substr(1);
        if (tail == "ed" || tail == "ing") return tail;
    }
    return std::nullopt;
}

std::string inflect(const std::string& synonym, const std::string& suffix) {
    if (suffix.empty()) return synonym;
    std::string s = synonym;
    if (suffix == "s" || suffix == "es") return s + "s";
    std::string suf = suffix == "d" ? "ed" : suffix;
    if (!s.empty() && s.back() == 'e') {
        if (suf == "ing") s.pop_back();
        else return s + "d";  // examine + ed -> examined
    } else if (s.size() >= 2 && !is_vowel(s[s.size() - 1]) && is_vowel(s[s.size() - 2]) &&
               (s.size() < 3 || !is_vowel(s[s.size() - 3])) && s.back() != 'w' &&
               s.back() != 'x' && s.back() != 'y') {
        s.push_back(s.back());  // omit + ed -> omitted
    }
    return s + suf;
}

}  // namespace

PerturbResult apply_lmod(const Problem& p, const PerturbationSpec& spec,
                         const MarkerLexicon& lx) {
    // A lexicon entry targeting a number is a hard failure up front.
    for (const LexiconEntry& e : spec.lexicon) {
        if (Rational::parse(e.surface)) {
            throw NumberTouched("lexicon entry targets a number: " + e.surface);
        }
    }

    struct Entry {
        std::vector<std::string> words;
        std::string synonym;
    };
    std::vector<Entry> entries;
    for (const LexiconEntry& e : spec.lexicon) {
        Entry en;
        std::istringstream ks(e.surface);
        std::string w;
        while (ks >> w) en.words.push_back(to_lower(w));
        en.synonym = e.synonym;
        if (!en.words.empty()) entries.push_back(std::move(en));
    }
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.words.size() > b.words.size(); });

    PerturbResult result;
    result.problem = p;

    auto transform_text = [&](const std::string& text) {
        std::vector<Token> tokens = tokenize(text);
        std::vector<bool> consumed(tokens.size(), false);
        std::vector<PhraseMatch> matches;
        auto protected_token = [&](std::size_t i) {
            const Token& t = tokens[i];
            if (t.is_number) return true;
            if (lx.weekday(t.text)) return true;
            bool sentence_initial =
                i == 0 || (t.start >= 2 && (text[t.start - 2] == '.' || text[t.start - 2] == '!' ||
                                            text[t.start - 2] == '?'));
            // Mid-sentence capitalized words are entity names.
            if (starts_with_upper(t.text) && !sentence_initial) return true;
            return false;
        };
        for (const Entry& e : entries) {
            for (std::size_t i = 0; i + e.words.size() <= tokens.size(); ++i) {
                bool ok = true;
                std::string suffix;
                for (std::size_t k = 0; k < e.words.size(); ++k) {
                    if (consumed[i + k] || protected_token(i + k)) {
                        ok = false;
                        break;
                    }
                    std::string token_lower = to_lower(tokens[i + k].text);
                    if (k + 1 == e.words.size()) {
                        auto suf = inflection_suffix(token_lower, e.words[k]);
                        if (!suf) {
                            ok = false;
                            break;
                        }
                        suffix = *suf;
                    } else if (token_lower != e.words[k]) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) continue;
                for (std::size_t k = 0; k < e.words.size(); ++k) consumed[i + k] = true;
                PhraseMatch m;
                m.start = tokens[i].start;
                m.end = tokens[i + e.words.size() - 1].end;
                m.replacement = match_case(tokens[i].text, inflect(e.synonym, suffix));
                matches.push_back(std::move(m));
            }
        }
        std::sort(matches.begin(), matches.end(),
                  [](const PhraseMatch& a, const PhraseMatch& b) { return a.start < b.start; });
        return apply_matches(text, matches, &result.replacements);
    };
    result.problem.body = transform_text(p.body);
    result.problem.question = transform_text(p.question);
    result.problem.provenance = Provenance::l_mod;
    result.problem.parent_id = p.id;
    result.problem.id = p.id + ".l_mod";

    require_quantities_unchanged(p, result.problem, lx, "l_mod");
    return result;
}

}  // namespace gsmds
