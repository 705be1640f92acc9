#include "gsmds/harness.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "gsmds/dataset.hpp"
#include "gsmds/digest.hpp"
#include "gsmds/pipeline.hpp"
#include "gsmds/textutil.hpp"
#include "nlohmann/json.hpp"

namespace gsmds {

std::optional<StructureSource> structure_source_from_name(std::string_view name) {
    std::string n = to_lower(name);
    std::replace(n.begin(), n.end(), '-', '_');
    if (n == "rule_based" || n == "rule" || n == "rules") return StructureSource::rule_based;
    if (n == "endpoint_generated" || n == "endpoint" || n == "generated") {
        return StructureSource::endpoint_generated;
    }
    if (n == "precomputed" || n == "files") return StructureSource::precomputed;
    return std::nullopt;
}

std::string structure_source_name(StructureSource s) {
    switch (s) {
        case StructureSource::rule_based: return "rule_based";
        case StructureSource::endpoint_generated: return "endpoint_generated";
        case StructureSource::precomputed: return "precomputed";
    }
    return "?";
}

std::size_t RunManifest::correct_count() const {
    std::size_t n = 0;
    for (const EvalRecord& r : records) {
        if (r.correct) ++n;
    }
    return n;
}

std::size_t RunManifest::errored_count() const {
    std::size_t n = 0;
    for (const EvalRecord& r : records) {
        if (r.errored) ++n;
    }
    return n;
}

double RunManifest::accuracy_percent() const {
    if (records.empty()) return 0.0;
    return 100.0 * static_cast<double>(correct_count()) / static_cast<double>(records.size());
}

namespace {

std::string iso_timestamp() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// One cached round trip through the endpoint.
ChatResponse cached_complete(const std::vector<ChatMessage>& messages, ChatEndpoint& endpoint,
                             const EndpointConfig& cfg, const ResponseCache& cache) {
    const std::string key = ResponseCache::key_for(cfg.model, messages, cfg);
    if (auto hit = cache.lookup(key)) return *hit;
    ChatResponse response = endpoint.complete(messages, cfg);
    cache.store(key, response);
    return response;
}

std::string prompt_digest(const std::vector<ChatMessage>& messages) {
    std::string joined;
    for (const ChatMessage& m : messages) {
        joined += m.role;
        joined += '\x1f';
        joined += m.content;
        joined += '\x1e';
    }
    return sha256_hex(joined);
}

}  // namespace

std::string exemplar_set_digest(const std::vector<Exemplar>& exemplars) {
    std::string joined;
    for (const Exemplar& ex : exemplars) {
        joined += ex.question;
        joined += '\x1f';
        joined += ex.structure;
        joined += '\x1f';
        joined += ex.answer;
        joined += '\x1e';
    }
    return sha256_hex(joined);
}

RunManifest run_eval(const std::vector<Problem>& problems, ChatEndpoint& endpoint,
                     const EndpointConfig& cfg, const RunOptions& options) {
    validate_config(cfg);

    RunManifest manifest;
    manifest.dataset_path = options.dataset_path;
    manifest.dataset_digest = options.dataset_digest;
    manifest.dataset_label = options.dataset_label;
    if (manifest.dataset_label.empty() && !options.dataset_path.empty()) {
        manifest.dataset_label =
            std::filesystem::path(options.dataset_path).stem().string();
    }
    manifest.mode = options.mode;
    manifest.structure_source = options.structure_source;
    manifest.model = cfg.model;
    manifest.endpoint = cfg;
    manifest.shots = options.shots;
    manifest.timestamp = iso_timestamp();

    std::vector<Exemplar> exemplars =
        options.exemplars.empty() ? built_in_exemplars() : options.exemplars;
    if (options.shots >= 0 && static_cast<std::size_t>(options.shots) < exemplars.size()) {
        exemplars.resize(static_cast<std::size_t>(options.shots));
    }
    manifest.exemplar_digest = exemplar_set_digest(exemplars);

    std::vector<const Problem*> ordered;
    ordered.reserve(problems.size());
    for (const Problem& p : problems) ordered.push_back(&p);
    std::sort(ordered.begin(), ordered.end(),
              [](const Problem* a, const Problem* b) { return a->id < b->id; });

    ResponseCache cache(options.cache_dir);
    manifest.records.resize(ordered.size());

    std::atomic<std::size_t> next{0};
    std::mutex fail_mutex;
    std::exception_ptr hard_failure;

    auto worker = [&]() {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= ordered.size()) return;
            {
                std::lock_guard<std::mutex> lock(fail_mutex);
                if (hard_failure) return;
            }
            const Problem& p = *ordered[i];
            EvalRecord rec;
            rec.problem_id = p.id;
            rec.mode = options.mode;
            try {
                std::optional<DiscourseStructure> structure;
                if (options.mode == EvalMode::ds_plus) {
                    switch (options.structure_source) {
                        case StructureSource::rule_based: {
                            structure = analyze(p).structure;
                            break;
                        }
                        case StructureSource::precomputed: {
                            std::filesystem::path path =
                                std::filesystem::path(options.structures_dir) /
                                (p.id + ".structure.txt");
                            std::ifstream in(path);
                            if (!in) {
                                throw harness_error("missing structure file: " + path.string());
                            }
                            std::ostringstream buf;
                            buf << in.rdbuf();
                            structure = parse_structure(buf.str());
                            break;
                        }
                        case StructureSource::endpoint_generated: {
                            auto gen_prompt = assemble_prompt(p, std::nullopt,
                                                              PromptMode::structure_gen, exemplars);
                            ChatResponse gen = cached_complete(gen_prompt, endpoint, cfg, cache);
                            structure = parse_structure(gen.content);
                            break;
                        }
                    }
                }
                PromptMode mode = options.mode == EvalMode::ds_plus ? PromptMode::answer_ds
                                                                    : PromptMode::answer_plain;
                rec.prompt = assemble_prompt(p, structure, mode, exemplars);
                ChatResponse response = cached_complete(rec.prompt, endpoint, cfg, cache);
                rec.completion = response.content;
                rec.latency_ms = response.latency_ms;
                rec.prompt_tokens = response.prompt_tokens;
                rec.completion_tokens = response.completion_tokens;
                rec.extracted = extract_answer(rec.completion);
                rec.correct = rec.extracted && *rec.extracted == p.gold_answer;
            } catch (const EndpointUnavailable& e) {
                rec.errored = true;
                rec.error = e.what();
            } catch (const structure_io_error& e) {
                rec.errored = true;
                rec.error = e.what();
            } catch (const harness_error& e) {
                rec.errored = true;
                rec.error = e.what();
            } catch (...) {
                std::lock_guard<std::mutex> lock(fail_mutex);
                if (!hard_failure) hard_failure = std::current_exception();
                return;
            }
            manifest.records[i] = std::move(rec);
        }
    };

    const std::size_t thread_count =
        std::min<std::size_t>(static_cast<std::size_t>(cfg.max_concurrent),
                              std::max<std::size_t>(ordered.size(), 1));
    std::vector<std::thread> threads;
    threads.reserve(thread_count);
    for (std::size_t t = 0; t < thread_count; ++t) threads.emplace_back(worker);
    for (std::thread& t : threads) t.join();
    if (hard_failure) std::rethrow_exception(hard_failure);

    return manifest;
}

namespace {

nlohmann::json endpoint_json(const EndpointConfig& cfg) {
    return nlohmann::json{
        {"base_url", cfg.base_url},       {"model", cfg.model},
        {"api_key_env", cfg.api_key_env}, {"temperature", cfg.temperature},
        {"top_p", cfg.top_p},             {"max_new_tokens", cfg.max_new_tokens},
        {"max_retries", cfg.max_retries}, {"max_concurrent", cfg.max_concurrent},
    };
}

EndpointConfig endpoint_from_json(const nlohmann::json& j) {
    EndpointConfig cfg;
    cfg.base_url = j.value("base_url", cfg.base_url);
    cfg.model = j.value("model", cfg.model);
    cfg.api_key_env = j.value("api_key_env", cfg.api_key_env);
    cfg.temperature = j.value("temperature", cfg.temperature);
    cfg.top_p = j.value("top_p", cfg.top_p);
    cfg.max_new_tokens = j.value("max_new_tokens", cfg.max_new_tokens);
    cfg.max_retries = j.value("max_retries", cfg.max_retries);
    cfg.max_concurrent = j.value("max_concurrent", cfg.max_concurrent);
    return cfg;
}

}  // namespace

std::string manifest_to_jsonl(const RunManifest& m, bool include_timestamp) {
    std::ostringstream out;
    nlohmann::json header;
    header["type"] = "manifest";
    header["dataset"] = m.dataset_path;
    header["dataset_digest"] = m.dataset_digest;
    header["dataset_label"] = m.dataset_label;
    header["mode"] = eval_mode_name(m.mode);
    header["structure_source"] = structure_source_name(m.structure_source);
    header["model"] = m.model;
    header["endpoint"] = endpoint_json(m.endpoint);
    header["exemplar_digest"] = m.exemplar_digest;
    header["shots"] = m.shots;
    header["answer_matching"] = m.answer_matching;
    if (include_timestamp) header["timestamp"] = m.timestamp;
    out << header.dump() << "\n";
    for (const EvalRecord& r : m.records) {
        nlohmann::json j;
        j["type"] = "record";
        j["id"] = r.problem_id;
        j["mode"] = eval_mode_name(r.mode);
        j["prompt_digest"] = prompt_digest(r.prompt);
        j["completion"] = r.completion;
        if (r.extracted) {
            j["extracted"] = r.extracted->str();
        } else {
            j["extracted"] = nullptr;
        }
        j["correct"] = r.correct;
        j["errored"] = r.errored;
        if (r.errored) j["error"] = r.error;
        j["latency_ms"] = r.latency_ms;
        j["prompt_tokens"] = r.prompt_tokens;
        j["completion_tokens"] = r.completion_tokens;
        out << j.dump() << "\n";
    }
    return out.str();
}

void save_manifest(const std::string& path, const RunManifest& manifest) {
    std::ofstream out(path);
    if (!out) throw harness_error("cannot write manifest: " + path);
    out << manifest_to_jsonl(manifest, true);
}

RunManifest load_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw harness_error("cannot open manifest: " + path);
    RunManifest m;
    std::string line;
    int lineno = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) {
            throw harness_error("manifest line " + std::to_string(lineno) + ": invalid JSON");
        }
        std::string type = j.value("type", "");
        if (type == "manifest") {
            m.dataset_path = j.value("dataset", "");
            m.dataset_digest = j.value("dataset_digest", "");
            m.dataset_label = j.value("dataset_label", "");
            if (auto mode = eval_mode_from_name(j.value("mode", ""))) m.mode = *mode;
            if (auto src = structure_source_from_name(j.value("structure_source", ""))) {
                m.structure_source = *src;
            }
            m.model = j.value("model", "");
            if (j.contains("endpoint")) m.endpoint = endpoint_from_json(j["endpoint"]);
            m.exemplar_digest = j.value("exemplar_digest", "");
            m.shots = j.value("shots", 4);
            m.answer_matching = j.value("answer_matching", "exact-rational");
            m.timestamp = j.value("timestamp", "");
            have_header = true;
        } else if (type == "record") {
            EvalRecord r;
            r.problem_id = j.value("id", "");
            if (auto mode = eval_mode_from_name(j.value("mode", ""))) r.mode = *mode;
            r.completion = j.value("completion", "");
            if (j.contains("extracted") && !j["extracted"].is_null()) {
                r.extracted = Rational::parse(j["extracted"].get<std::string>());
            }
            r.correct = j.value("correct", false);
            r.errored = j.value("errored", false);
            r.error = j.value("error", "");
            r.latency_ms = j.value("latency_ms", 0);
            r.prompt_tokens = j.value("prompt_tokens", 0);
            r.completion_tokens = j.value("completion_tokens", 0);
            m.records.push_back(std::move(r));
        } else {
            throw harness_error("manifest line " + std::to_string(lineno) + ": unknown type");
        }
    }
    if (!have_header) throw harness_error("manifest has no header line: " + path);
    return m;
}

namespace {

bool is_mod_variant(const std::string& label) {
    std::string n = to_lower(label);
    std::replace(n.begin(), n.end(), '-', '_');
    return n.find("c_mod") != std::string::npos || n.find("n_mod") != std::string::npos ||
           n.find("l_mod") != std::string::npos;
}

}  // namespace

ReportTable score(const std::vector<RunManifest>& manifests) {
    ReportTable table;

    // Consistent digests within a dataset group.
    std::vector<std::pair<std::string, std::string>> group_digest;
    for (const RunManifest& m : manifests) {
        auto it = std::find_if(group_digest.begin(), group_digest.end(),
                               [&](const auto& g) { return g.first == m.dataset_label; });
        if (it == group_digest.end()) {
            group_digest.emplace_back(m.dataset_label, m.dataset_digest);
        } else if (it->second != m.dataset_digest) {
            throw MixedDatasets("dataset group '" + m.dataset_label +
                                "' mixes different dataset digests");
        }
    }

    auto model_row = [&](const std::string& model) -> std::size_t {
        for (std::size_t i = 0; i < table.models.size(); ++i) {
            if (table.models[i] == model) return i;
        }
        table.models.push_back(model);
        table.cells.emplace_back();
        return table.models.size() - 1;
    };
    auto group_col = [&](const std::string& group) -> std::size_t {
        for (std::size_t i = 0; i < table.groups.size(); ++i) {
            if (table.groups[i] == group) return i;
        }
        table.groups.push_back(group);
        return table.groups.size() - 1;
    };

    struct Tally {
        std::size_t correct = 0;
        std::size_t total = 0;
    };
    std::vector<std::vector<std::array<Tally, 2>>> tallies;

    for (const RunManifest& m : manifests) {
        std::size_t row = model_row(m.model);
        std::size_t col = group_col(m.dataset_label);
        if (tallies.size() < table.models.size()) tallies.resize(table.models.size());
        for (auto& r : tallies) {
            if (r.size() < table.groups.size()) r.resize(table.groups.size());
        }
        std::size_t sub = m.mode == EvalMode::ds_plus ? 1 : 0;
        tallies[row][col][sub].correct += m.correct_count();
        tallies[row][col][sub].total += m.records.size();
    }

    for (auto& row : tallies) row.resize(table.groups.size());
    table.cells.assign(table.models.size(),
                       std::vector<std::array<ReportCell, 2>>(table.groups.size()));
    for (std::size_t r = 0; r < table.models.size(); ++r) {
        for (std::size_t g = 0; g < table.groups.size(); ++g) {
            for (std::size_t s = 0; s < 2; ++s) {
                const Tally& t = tallies[r][g][s];
                if (t.total > 0) {
                    table.cells[r][g][s].present = true;
                    table.cells[r][g][s].accuracy_percent =
                        100.0 * static_cast<double>(t.correct) / static_cast<double>(t.total);
                }
            }
        }
    }

    // Overall group: mean over the *-MOD variant cells.
    std::vector<std::size_t> mod_groups;
    for (std::size_t g = 0; g < table.groups.size(); ++g) {
        if (is_mod_variant(table.groups[g])) mod_groups.push_back(g);
    }
    if (!mod_groups.empty()) {
        std::size_t overall = group_col("Overall");
        for (auto& row : table.cells) row.resize(table.groups.size());
        for (std::size_t r = 0; r < table.models.size(); ++r) {
            for (std::size_t s = 0; s < 2; ++s) {
                double sum = 0.0;
                std::size_t n = 0;
                for (std::size_t g : mod_groups) {
                    if (table.cells[r][g][s].present) {
                        sum += table.cells[r][g][s].accuracy_percent;
                        ++n;
                    }
                }
                if (n == mod_groups.size() && n > 0) {
                    table.cells[r][overall][s].present = true;
                    table.cells[r][overall][s].accuracy_percent = sum / static_cast<double>(n);
                }
            }
        }
    }
    return table;
}

std::string render_report_table(const ReportTable& table) {
    auto cell_text = [](const ReportCell& c) -> std::string {
        if (!c.present) return "-";
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.1f", c.accuracy_percent);
        return buf;
    };

    std::size_t model_width = 5;
    for (const std::string& m : table.models) model_width = std::max(model_width, m.size());

    std::ostringstream out;
    out << std::string(model_width, ' ');
    for (const std::string& g : table.groups) {
        std::string head = g;
        out << " | " << head;
        std::size_t group_width = std::max<std::size_t>(head.size(), 13);
        out << std::string(group_width - head.size(), ' ');
    }
    out << "\n";
    out << std::string(model_width, ' ');
    for (const std::string& g : table.groups) {
        std::size_t group_width = std::max<std::size_t>(g.size(), 13);
        std::string sub = "DS-     DS+";
        out << " | " << sub << std::string(group_width - sub.size(), ' ');
    }
    out << "\n";
    out << std::string(model_width, '-');
    for (const std::string& g : table.groups) {
        out << "-+-" << std::string(std::max<std::size_t>(g.size(), 13), '-');
    }
    out << "\n";
    for (std::size_t r = 0; r < table.models.size(); ++r) {
        out << table.models[r] << std::string(model_width - table.models[r].size(), ' ');
        for (std::size_t g = 0; g < table.groups.size(); ++g) {
            std::string minus = cell_text(table.cells[r][g][0]);
            std::string plus = cell_text(table.cells[r][g][1]);
            std::string cell = minus + std::string(minus.size() < 8 ? 8 - minus.size() : 1, ' ') + plus;
            std::size_t group_width = std::max<std::size_t>(table.groups[g].size(), 13);
            if (cell.size() < group_width) cell += std::string(group_width - cell.size(), ' ');
            out << " | " << cell;
        }
        out << "\n";
    }
    return out.str();
}

std::string render_report_jsonl(const ReportTable& table) {
    std::ostringstream out;
    for (std::size_t r = 0; r < table.models.size(); ++r) {
        for (std::size_t g = 0; g < table.groups.size(); ++g) {
            for (std::size_t s = 0; s < 2; ++s) {
                if (!table.cells[r][g][s].present) continue;
                nlohmann::json j;
                j["model"] = table.models[r];
                j["dataset"] = table.groups[g];
                j["mode"] = s == 1 ? "ds_plus" : "ds_minus";
                char buf[32];
                std::snprintf(buf, sizeof(buf), "%.1f", table.cells[r][g][s].accuracy_percent);
                j["accuracy_percent"] = std::strtod(buf, nullptr);
                out << j.dump() << "\n";
            }
        }
    }
    return out.str();
}

}  // namespace gsmds
