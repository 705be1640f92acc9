#include "gsmds/dataset.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "gsmds/digest.hpp"
#include "gsmds/segmenter.hpp"
#include "gsmds/textutil.hpp"
#include "nlohmann/json.hpp"

namespace gsmds {

namespace {

const char* kWhWords[] = {"how many", "how much", "what", "how", "who",
                          "when",     "where",    "why",  "which"};

}  // namespace

BodyQuestion split_body_question(const std::string& full_text) {
    std::vector<Sentence> sentences = split_sentences(full_text);
    if (sentences.size() < 2) {
        throw dataset_error("problem text needs at least one statement and a question sentence");
    }
    const Sentence& last = sentences.back();
    std::string body = trim(full_text.substr(0, last.start));
    std::string question = trim(std::string(last.text));

    // Promote the conditional clause of an "If ..., <wh-question>?" sentence
    // into the body.
    if (!question.empty() && question.back() == '?' && question.rfind("If ", 0) == 0) {
        std::string lowered = to_lower(question);
        std::size_t wh_pos = std::string::npos;
        for (const char* wh : kWhWords) {
            std::size_t pos = lowered.find(std::string(" ") + wh + " ", 3);
            if (pos != std::string::npos && (wh_pos == std::string::npos || pos < wh_pos)) {
                wh_pos = pos;
            }
        }
        if (wh_pos != std::string::npos) {
            std::string clause = trim(question.substr(3, wh_pos - 3));
            while (!clause.empty() && (clause.back() == ',' || clause.back() == ';')) {
                clause.pop_back();
                clause = trim(clause);
            }
            std::string rest = trim(question.substr(wh_pos + 1));
            if (!clause.empty() && !rest.empty()) {
                clause[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(clause[0])));
                rest[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(rest[0])));
                body += (body.empty() ? "" : " ") + clause + ".";
                question = rest;
            }
        }
    }
    if (body.empty()) {
        throw dataset_error("problem text has no statement sentences before the question");
    }
    return {body, question};
}

Rational parse_answer_string(const std::string& answer) {
    std::string s = answer;
    auto pos = s.rfind("####");
    if (pos != std::string::npos) s = s.substr(pos + 4);
    auto v = Rational::parse(trim(s));
    if (!v) throw dataset_error("cannot parse answer value: '" + answer + "'");
    return *v;
}

namespace {

struct OperandText {
    SolutionOperand operand;
    std::size_t consumed = 0;
};

std::optional<OperandText> parse_operand(std::string_view s) {
    std::size_t i = 0;
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i >= s.size()) return std::nullopt;
    OperandText out;
    if (s[i] == '#') {
        ++i;
        std::string num;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) num.push_back(s[i++]);
        if (num.empty()) return std::nullopt;
        out.operand.step_ref = std::atoi(num.c_str());
        out.consumed = i;
        return out;
    }
    if (s[i] == '_') {
        out.operand.pinned = true;
        ++i;
    }
    if (i < s.size() && s[i] == '(') {
        auto close = s.find(')', i);
        if (close == std::string_view::npos) return std::nullopt;
        auto v = Rational::parse(s.substr(i + 1, close - i - 1));
        if (!v) return std::nullopt;
        out.operand.value = *v;
        out.consumed = close + 1;
        return out;
    }
    std::size_t j = i;
    if (j < s.size() && (s[j] == '-' || s[j] == '+')) ++j;
    std::size_t start = j;
    while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '.' ||
                            s[j] == ',')) {
        ++j;
    }
    if (j == start) return std::nullopt;
    auto v = Rational::parse(s.substr(i, j - i));
    if (!v) return std::nullopt;
    out.operand.value = *v;
    out.consumed = j;
    return out;
}

SolutionStep parse_step_string(const std::string& text) {
    std::string_view s = text;
    auto lhs = parse_operand(s);
    if (!lhs) throw dataset_error("bad solution step (lhs): '" + text + "'");
    std::size_t i = lhs->consumed;
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i >= s.size()) throw dataset_error("bad solution step (op): '" + text + "'");
    auto op = arith_op_from_char(s[i]);
    if (!op) throw dataset_error("bad solution step (op): '" + text + "'");
    ++i;
    auto rhs = parse_operand(s.substr(i));
    if (!rhs) throw dataset_error("bad solution step (rhs): '" + text + "'");
    i += rhs->consumed;
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i >= s.size() || s[i] != '=') throw dataset_error("bad solution step (=): '" + text + "'");
    ++i;
    std::string result_text = trim(s.substr(i));
    if (!result_text.empty() && result_text.front() == '(' && result_text.back() == ')') {
        result_text = result_text.substr(1, result_text.size() - 2);
    }
    auto result = Rational::parse(result_text);
    if (!result) throw dataset_error("bad solution step (result): '" + text + "'");

    SolutionStep step;
    step.lhs = lhs->operand;
    step.op = *op;
    step.rhs = rhs->operand;
    step.result = *result;
    return step;
}

}  // namespace

std::vector<SolutionStep> parse_solution_steps(const std::vector<std::string>& step_strings) {
    std::vector<SolutionStep> steps;
    steps.reserve(step_strings.size());
    for (const std::string& s : step_strings) steps.push_back(parse_step_string(s));
    return steps;
}

std::vector<SolutionStep> parse_gsm8k_solution(const std::string& rationale) {
    std::vector<SolutionStep> steps;
    std::size_t pos = 0;
    while (true) {
        auto open = rationale.find("<<", pos);
        if (open == std::string::npos) break;
        auto close = rationale.find(">>", open);
        if (close == std::string::npos) {
            throw dataset_error("unterminated <<...>> span in solution rationale");
        }
        std::string span = rationale.substr(open + 2, close - open - 2);
        SolutionStep step = parse_step_string(span);
        // Operands equal to an earlier result are references to it.
        auto link = [&](SolutionOperand& o) {
            if (o.step_ref || o.pinned) return;
            for (std::size_t k = steps.size(); k-- > 0;) {
                if (steps[k].result == o.value) {
                    o.step_ref = static_cast<int>(k) + 1;
                    return;
                }
            }
        };
        link(step.lhs);
        link(step.rhs);
        steps.push_back(step);
        pos = close + 2;
    }
    return steps;
}

std::string render_solution_step(const SolutionStep& step) {
    auto operand_str = [](const SolutionOperand& o) -> std::string {
        if (o.step_ref) return "#" + std::to_string(*o.step_ref);
        std::string prefix = o.pinned ? "_" : "";
        if (o.value.is_integer()) return prefix + o.value.str();
        return prefix + "(" + o.value.str() + ")";
    };
    std::string result = step.result.is_integer() ? step.result.str() : "(" + step.result.str() + ")";
    return operand_str(step.lhs) + arith_op_char(step.op) + operand_str(step.rhs) + "=" + result;
}

Problem parse_problem_json_line(const std::string& line, int lineno) {
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        throw dataset_error("line " + std::to_string(lineno) + ": invalid JSON object");
    }
    Problem p;
    try {
        p.id = j.value("id", "");
        if (p.id.empty()) throw dataset_error("missing 'id'");
        std::string full = j.value("question", "");
        if (full.empty()) throw dataset_error("missing 'question'");
        BodyQuestion bq = split_body_question(full);
        p.body = bq.body;
        p.question = bq.question;
        if (!j.contains("answer")) throw dataset_error("missing 'answer'");
        p.gold_answer = parse_answer_string(j["answer"].is_string()
                                                ? j["answer"].get<std::string>()
                                                : j["answer"].dump());
        if (j.contains("solution_steps")) {
            std::vector<std::string> strs = j["solution_steps"].get<std::vector<std::string>>();
            p.solution_expr = parse_solution_steps(strs);
        } else if (j.contains("solution")) {
            p.solution_expr = parse_gsm8k_solution(j["solution"].get<std::string>());
        }
        if (j.contains("provenance")) {
            auto prov = provenance_from_name(j["provenance"].get<std::string>());
            if (!prov) throw dataset_error("unknown provenance");
            p.provenance = *prov;
        }
        p.parent_id = j.value("parent", "");

        // Invariants.
        if (p.provenance != Provenance::original && p.parent_id.empty()) {
            throw dataset_error("perturbed problem lacks 'parent'");
        }
        if (!p.solution_expr.empty()) {
            Rational computed = evaluate_solution(p.solution_expr);
            if (computed != p.gold_answer) {
                throw dataset_error("solution chain evaluates to " + computed.str() +
                                    " but answer is " + p.gold_answer.str());
            }
        }
    } catch (const dataset_error& e) {
        throw dataset_error("line " + std::to_string(lineno) + " (" +
                            (p.id.empty() ? "?" : p.id) + "): " + e.what());
    } catch (const std::exception& e) {
        throw dataset_error("line " + std::to_string(lineno) + ": " + e.what());
    }
    return p;
}

std::vector<Problem> load_problems_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw dataset_error("cannot open dataset: " + path);
    std::vector<Problem> problems;
    std::unordered_set<std::string> seen_ids;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        Problem p = parse_problem_json_line(line, lineno);
        if (!seen_ids.insert(p.id).second) {
            throw dataset_error("line " + std::to_string(lineno) + ": duplicate id '" + p.id +
                                "'");
        }
        problems.push_back(std::move(p));
    }
    return problems;
}

void save_problems_jsonl(const std::string& path, const std::vector<Problem>& problems,
                         const MarkerLexicon& lexicon) {
    std::ofstream out(path);
    if (!out) throw dataset_error("cannot write dataset: " + path);
    for (const Problem& p : problems) {
        nlohmann::json j;
        j["id"] = p.id;
        j["question"] = p.full_text();
        j["answer"] = p.gold_answer.str();
        if (!p.solution_expr.empty()) {
            std::vector<std::string> steps;
            steps.reserve(p.solution_expr.size());
            for (const SolutionStep& s : p.solution_expr) steps.push_back(render_solution_step(s));
            j["solution_steps"] = steps;
        }
        if (p.provenance != Provenance::original) {
            j["provenance"] = provenance_name(p.provenance);
            j["parent"] = p.parent_id;
        }
        // Query premise excluded from the premise count.
        try {
            SegmentResult seg = segment(p, lexicon);
            j["statement_premises"] = seg.premises.size() - 1;
        } catch (const segment_error&) {
        }
        out << j.dump() << "\n";
    }
}

std::string file_digest_hex(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw dataset_error("cannot open for digest: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return sha256_hex(buf.str());
}

}  // namespace gsmds
