#include "gsmds/structure_io.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "gsmds/textutil.hpp"

namespace gsmds {

namespace {

std::string topic_handle(const DiscourseStructure& s, const std::string& label) {
    for (std::size_t i = 0; i < s.topics.size(); ++i) {
        if (s.topics[i].label == label) return "t" + std::to_string(i + 1);
    }
    return "t?";
}

}  // namespace

std::string serialize_structure(const DiscourseStructure& s) {
    std::ostringstream out;
    out << "<structure>\n";
    out << "Topics\n";
    for (const Topic& t : s.topics) {
        out << "[" << t.label << "]: " << t.description << "\n";
    }
    if (s.topic_relation) {
        out << "Relationships\n";
        out << topic_handle(s, s.topic_relation->from) << "--"
            << relation_wire_name(s.topic_relation->relation) << "--"
            << topic_handle(s, s.topic_relation->to) << "\n";
    }
    out << "Premises\n";
    for (const Premise& p : s.premises) {
        out << "P" << p.index << ": " << p.text << "\n";
    }
    out << "Narrative Structure\n";
    for (const RelationEdge& e : s.edges) {
        out << "P" << e.source << "--" << relation_wire_name(e.relation) << "--P" << e.target
            << "\n";
    }
    out << "</structure>";
    return out.str();
}

namespace {

enum class Section { none, topics, relationships, premises, narrative };

std::optional<Section> section_of(std::string_view line) {
    std::string l = to_lower(trim(line));
    while (!l.empty() && l.back() == ':') l.pop_back();
    if (l == "topics") return Section::topics;
    if (l == "relationships" || l == "relationship") return Section::relationships;
    if (l == "premises") return Section::premises;
    if (l == "narrative structure" || l == "narrative flow") return Section::narrative;
    return std::nullopt;
}

// "P3--bckgnd--P4", tolerant of spaces around the separators.
struct EdgeLine {
    int source = 0;
    int target = 0;
    std::string relation;
};

std::optional<EdgeLine> parse_edge_line(std::string_view line) {
    std::string l = trim(line);
    if (l.size() < 2 || (l[0] != 'P' && l[0] != 'p')) return std::nullopt;
    std::size_t i = 1;
    std::string num;
    while (i < l.size() && std::isdigit(static_cast<unsigned char>(l[i]))) num.push_back(l[i++]);
    if (num.empty()) return std::nullopt;
    while (i < l.size() && std::isspace(static_cast<unsigned char>(l[i]))) ++i;
    if (i + 1 >= l.size() || l[i] != '-' || l[i + 1] != '-') return std::nullopt;
    i += 2;
    while (i < l.size() && std::isspace(static_cast<unsigned char>(l[i]))) ++i;
    std::string rel;
    while (i < l.size() && (std::isalpha(static_cast<unsigned char>(l[i])))) rel.push_back(l[i++]);
    while (i < l.size() && std::isspace(static_cast<unsigned char>(l[i]))) ++i;
    if (i + 1 >= l.size() || l[i] != '-' || l[i + 1] != '-') return std::nullopt;
    i += 2;
    while (i < l.size() && std::isspace(static_cast<unsigned char>(l[i]))) ++i;
    if (i >= l.size() || (l[i] != 'P' && l[i] != 'p')) return std::nullopt;
    ++i;
    std::string num2;
    while (i < l.size() && std::isdigit(static_cast<unsigned char>(l[i]))) num2.push_back(l[i++]);
    if (num2.empty()) return std::nullopt;
    EdgeLine e;
    e.source = std::atoi(num.c_str());
    e.target = std::atoi(num2.c_str());
    e.relation = rel;
    return e;
}

// "t1--elab--t2" (also ta/t_a spellings).
struct TopicRelLine {
    int from = 0;
    int to = 0;
    std::string relation;
};

std::optional<TopicRelLine> parse_topic_rel_line(std::string_view line) {
    std::string l = to_lower(trim(line));
    auto read_handle = [&](std::size_t& i) -> int {
        if (i >= l.size() || l[i] != 't') return 0;
        ++i;
        if (i < l.size() && l[i] == '_') ++i;
        if (i >= l.size()) return 0;
        char c = l[i];
        ++i;
        if (std::isdigit(static_cast<unsigned char>(c))) return c - '0';
        if (c >= 'a' && c <= 'z') return c - 'a' + 1;
        return 0;
    };
    std::size_t i = 0;
    int from = read_handle(i);
    if (from == 0) return std::nullopt;
    while (i < l.size() && (std::isspace(static_cast<unsigned char>(l[i])) || l[i] == '-')) ++i;
    std::string rel;
    while (i < l.size() && std::isalpha(static_cast<unsigned char>(l[i]))) rel.push_back(l[i++]);
    while (i < l.size() && (std::isspace(static_cast<unsigned char>(l[i])) || l[i] == '-')) ++i;
    int to = read_handle(i);
    if (to == 0 || rel.empty()) return std::nullopt;
    return TopicRelLine{from, to, rel};
}

}  // namespace

DiscourseStructure parse_structure(std::string_view text) {
    auto open = text.find("<structure>");
    if (open == std::string_view::npos) open = text.find("<Structure>");
    auto close = text.find("</structure>");
    if (close == std::string_view::npos) close = text.find("</Structure>");
    if (open == std::string_view::npos || close == std::string_view::npos || close < open) {
        throw MalformedBlock("missing <structure></structure> delimiters");
    }
    std::string_view inner = text.substr(open + 11, close - open - 11);

    DiscourseStructure s;
    std::vector<EdgeLine> edge_lines;
    std::optional<TopicRelLine> topic_rel;
    bool saw_topics = false, saw_premises = false, saw_narrative = false;

    Section section = Section::none;
    std::istringstream in{std::string(inner)};
    std::string raw;
    while (std::getline(in, raw)) {
        std::string line = trim(raw);
        if (line.empty()) continue;
        if (auto sec = section_of(line)) {
            section = *sec;
            if (section == Section::topics) saw_topics = true;
            if (section == Section::premises) saw_premises = true;
            if (section == Section::narrative) saw_narrative = true;
            continue;
        }
        switch (section) {
            case Section::topics: {
                auto lb = line.find('[');
                auto rb = line.find(']');
                if (lb != std::string::npos && rb != std::string::npos && rb > lb) {
                    Topic t;
                    t.label = to_lower(line.substr(lb + 1, rb - lb - 1));
                    std::string rest = trim(line.substr(rb + 1));
                    if (!rest.empty() && rest[0] == ':') rest = trim(rest.substr(1));
                    t.description = rest;
                    s.topics.push_back(std::move(t));
                } else if (!s.topics.empty()) {
                    // wrapped description line
                    s.topics.back().description += " " + line;
                }
                break;
            }
            case Section::relationships: {
                if (auto r = parse_topic_rel_line(line)) topic_rel = r;
                break;
            }
            case Section::premises: {
                // "P<k>: text"; other lines continue the previous premise.
                bool matched = false;
                if ((line[0] == 'P' || line[0] == 'p') && line.size() > 1 &&
                    std::isdigit(static_cast<unsigned char>(line[1]))) {
                    std::size_t i = 1;
                    while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) ++i;
                    std::size_t after = i;
                    while (after < line.size() &&
                           std::isspace(static_cast<unsigned char>(line[after]))) {
                        ++after;
                    }
                    if (after < line.size() && line[after] == ':') {
                        Premise p;
                        p.index = std::atoi(line.substr(1, i - 1).c_str());
                        p.text = trim(line.substr(after + 1));
                        s.premises.push_back(std::move(p));
                        matched = true;
                    }
                }
                if (!matched && !s.premises.empty()) {
                    s.premises.back().text += " " + line;
                }
                break;
            }
            case Section::narrative: {
                // non-edge lines here are decoration; skip them
                if (auto e = parse_edge_line(line)) edge_lines.push_back(*e);
                break;
            }
            case Section::none:
                break;
        }
    }

    if (!saw_topics || !saw_premises || !saw_narrative) {
        std::string missing;
        if (!saw_topics) missing += " Topics";
        if (!saw_premises) missing += " Premises";
        if (!saw_narrative) missing += " 'Narrative Structure'";
        throw MalformedBlock("missing section(s):" + missing);
    }
    if (s.premises.empty()) throw MalformedBlock("no premises in block");

    // Premise order follows the listed indices; re-index to position to keep
    // the structure well-formed even if the producer numbered from 0.
    std::stable_sort(s.premises.begin(), s.premises.end(),
                     [](const Premise& a, const Premise& b) { return a.index < b.index; });
    std::vector<int> original_indices;
    original_indices.reserve(s.premises.size());
    for (auto& p : s.premises) original_indices.push_back(p.index);
    for (std::size_t i = 0; i < s.premises.size(); ++i) {
        s.premises[i].index = static_cast<int>(i) + 1;
    }
    s.premises.back().is_query = true;

    const int n = static_cast<int>(s.premises.size());
    auto remap = [&](int listed) -> int {
        for (std::size_t i = 0; i < original_indices.size(); ++i) {
            if (original_indices[i] == listed) return static_cast<int>(i) + 1;
        }
        return -1;
    };
    for (const EdgeLine& e : edge_lines) {
        auto rel = relation_from_name(e.relation);
        if (!rel) throw UnknownRelation("unknown relation token: " + e.relation);
        int src = remap(e.source);
        int dst = remap(e.target);
        if (src < 1 || src > n || dst < 1 || dst > n) {
            throw DanglingPremise("edge P" + std::to_string(e.source) + "--" + e.relation + "--P" +
                                  std::to_string(e.target) + " references an undefined premise");
        }
        s.edges.push_back({src, dst, *rel});
    }

    if (topic_rel) {
        int nt = static_cast<int>(s.topics.size());
        if (topic_rel->from >= 1 && topic_rel->from <= nt && topic_rel->to >= 1 &&
            topic_rel->to <= nt) {
            auto rel = relation_from_name(topic_rel->relation);
            if (!rel) throw UnknownRelation("unknown relation token: " + topic_rel->relation);
            s.topic_relation = TopicRelation{s.topics[static_cast<std::size_t>(topic_rel->from - 1)].label,
                                             *rel,
                                             s.topics[static_cast<std::size_t>(topic_rel->to - 1)].label};
        }
    }
    return s;
}

std::optional<PromptMode> prompt_mode_from_name(std::string_view name) {
    std::string n = to_lower(name);
    std::replace(n.begin(), n.end(), '-', '_');
    if (n == "structure_gen" || n == "structure") return PromptMode::structure_gen;
    if (n == "answer_ds" || n == "ds_plus" || n == "ds+") return PromptMode::answer_ds;
    if (n == "answer_plain" || n == "plain" || n == "ds_minus" || n == "ds-") {
        return PromptMode::answer_plain;
    }
    return std::nullopt;
}

std::string prompt_mode_name(PromptMode m) {
    switch (m) {
        case PromptMode::structure_gen: return "structure_gen";
        case PromptMode::answer_ds: return "answer_ds";
        case PromptMode::answer_plain: return "answer_plain";
    }
    return "?";
}

std::vector<ChatMessage> assemble_prompt(const Problem& problem,
                                         const std::optional<DiscourseStructure>& structure,
                                         PromptMode mode,
                                         const std::vector<Exemplar>& exemplars) {
    if (mode == PromptMode::answer_ds && !structure) {
        throw MissingStructure("answer_ds prompt requires a discourse structure");
    }
    std::vector<ChatMessage> messages;
    switch (mode) {
        case PromptMode::structure_gen:
            messages.push_back({"system", structure_gen_system_prompt()});
            for (const Exemplar& ex : exemplars) {
                messages.push_back({"user", ex.question});
                messages.push_back({"assistant", ex.structure});
            }
            messages.push_back({"user", problem.full_text()});
            break;
        case PromptMode::answer_ds:
            messages.push_back({"system", answer_ds_system_prompt()});
            for (const Exemplar& ex : exemplars) {
                messages.push_back({"user", ex.question + "\n\n" + ex.structure});
                messages.push_back({"assistant", ex.answer});
            }
            messages.push_back(
                {"user", problem.full_text() + "\n\n" + serialize_structure(*structure)});
            break;
        case PromptMode::answer_plain:
            messages.push_back({"system", answer_plain_system_prompt()});
            for (const Exemplar& ex : exemplars) {
                messages.push_back({"user", ex.question});
                messages.push_back({"assistant", ex.answer});
            }
            messages.push_back({"user", problem.full_text()});
            break;
    }
    return messages;
}

namespace {

struct NumberHit {
    std::string surface;
};

// Number tokens in order, skipping denominations ("
// 240 5 dollar bills" -> the 5 is a denomination, not an answer).
std::vector<NumberHit> answer_numbers(std::string_view text) {
    std::vector<NumberHit> hits;
    const std::vector<Token> tokens = tokenize(text);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (!tokens[i].is_number) continue;
        if (i + 2 < tokens.size() && tokens[i + 1].is_word && tokens[i + 2].is_word) {
            std::string w1 = to_lower(tokens[i + 1].text);
            std::string w2 = to_lower(tokens[i + 2].text);
            if (w1 == "dollar" && (w2 == "bill" || w2 == "bills")) continue;
        }
        hits.push_back({std::string(tokens[i].text)});
    }
    return hits;
}

std::optional<Rational> last_number(std::string_view text) {
    auto hits = answer_numbers(text);
    for (std::size_t i = hits.size(); i-- > 0;) {
        if (auto v = Rational::parse(hits[i].surface)) return v;
    }
    return std::nullopt;
}

std::optional<Rational> first_number(std::string_view text) {
    for (const NumberHit& h : answer_numbers(text)) {
        if (auto v = Rational::parse(h.surface)) return v;
    }
    return std::nullopt;
}

}  // namespace

std::optional<Rational> extract_answer(std::string_view completion) {
    // 1. <answer> tag content.
    std::string lowered = to_lower(completion);
    auto open = lowered.rfind("<answer>");
    if (open != std::string::npos) {
        auto close = lowered.find("</answer>", open);
        std::string_view region = close == std::string::npos
                                      ? completion.substr(open + 8)
                                      : completion.substr(open + 8, close - open - 8);
        if (auto v = last_number(region)) return v;
    }
    // 2. "final answer" marker line, last occurrence.
    {
        std::istringstream in{std::string(completion)};
        std::string line;
        std::optional<Rational> found;
        while (std::getline(in, line)) {
            std::string l = to_lower(line);
            auto pos = l.find("final answer");
            if (pos == std::string::npos) continue;
            if (auto v = first_number(std::string_view(line).substr(pos + 12))) found = v;
        }
        if (found) return found;
    }
    // 3. last number anywhere.
    return last_number(completion);
}

}  // namespace gsmds
