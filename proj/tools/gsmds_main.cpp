// gsmds: discourse-structure toolkit for grade-school math word problems.
// Subcommands: structure, perturb, eval, report.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gsmds/dataset.hpp"
#include "gsmds/harness.hpp"
#include "gsmds/perturb.hpp"
#include "gsmds/pipeline.hpp"
#include "gsmds/structure_io.hpp"
#include "nlohmann/json.hpp"

namespace fs = std::filesystem;
using namespace gsmds;

namespace {

MarkerLexicon lexicon_for(const std::string& overrides_path) {
    if (overrides_path.empty()) return MarkerLexicon::embedded();
    return MarkerLexicon::with_overrides(overrides_path);
}

int cmd_structure(const std::string& input, const std::string& out_dir, bool validate_only,
                  const std::string& overrides_path, const std::string& format) {
    MarkerLexicon lexicon = lexicon_for(overrides_path);

    if (validate_only) {
        // Check existing structure files in out_dir.
        std::size_t checked = 0, failed = 0;
        for (const auto& entry : fs::directory_iterator(out_dir)) {
            if (entry.path().extension() != ".txt") continue;
            std::ifstream in(entry.path());
            std::ostringstream buf;
            buf << in.rdbuf();
            ++checked;
            try {
                DiscourseStructure s = parse_structure(buf.str());
                auto diags = validate_structure(s);
                for (const Diagnostic& d : diags) {
                    std::cout << entry.path().filename().string() << ": " << d.invariant << ": "
                              << d.detail << "\n";
                }
            } catch (const structure_io_error& e) {
                std::cerr << entry.path().filename().string() << ": " << e.what() << "\n";
                ++failed;
            }
        }
        std::cout << checked << " structure file(s) checked, " << failed << " malformed\n";
        return failed == 0 ? 0 : 1;
    }

    std::vector<Problem> problems;
    try {
        problems = load_problems_jsonl(input);
    } catch (const dataset_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    fs::create_directories(out_dir);

    std::size_t diag_count = 0;
    for (const Problem& p : problems) {
        Analysis a = analyze(p, lexicon);
        fs::path out_path = fs::path(out_dir) / (p.id + ".structure.txt");
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "error: cannot write " << out_path.string() << "\n";
            return 1;
        }
        out << serialize_structure(a.structure) << "\n";

        for (const std::string& note : a.notes) {
            ++diag_count;
            if (format == "jsonl") {
                nlohmann::json j{{"id", p.id}, {"kind", "note"}, {"detail", note}};
                std::cout << j.dump() << "\n";
            } else {
                std::cout << p.id << ": note: " << note << "\n";
            }
        }
        for (const Diagnostic& d : a.diagnostics) {
            ++diag_count;
            if (format == "jsonl") {
                nlohmann::json j{{"id", p.id}, {"kind", d.invariant}, {"detail", d.detail}};
                std::cout << j.dump() << "\n";
            } else {
                std::cout << p.id << ": " << d.invariant << ": " << d.detail << "\n";
            }
        }
    }
    if (format != "jsonl") {
        std::cout << problems.size() << " structure file(s) written to " << out_dir << ", "
                  << diag_count << " diagnostic(s)\n";
    }
    return 0;
}

int cmd_perturb(const std::string& input, const std::string& spec_path, const std::string& kind,
                std::int64_t scale, const std::string& output) {
    try {
        PerturbationSpec spec =
            spec_path.empty() ? PerturbationSpec{} : load_perturbation_spec(spec_path);
        if (!kind.empty()) {
            auto k = perturbation_kind_from_name(kind);
            if (!k) {
                std::cerr << "error: unknown kind '" << kind << "'\n";
                return 1;
            }
            spec.kind = *k;
        }
        if (scale > 0) spec.scale_factor = scale;

        std::vector<Problem> problems = load_problems_jsonl(input);
        std::sort(problems.begin(), problems.end(),
                  [](const Problem& a, const Problem& b) { return a.id < b.id; });

        std::vector<Problem> out;
        for (const Problem& p : problems) {
            PerturbResult r;
            switch (spec.kind) {
                case PerturbationKind::c_mod: r = apply_cmod(p, spec); break;
                case PerturbationKind::n_mod: r = apply_nmod(p, spec); break;
                case PerturbationKind::l_mod: r = apply_lmod(p, spec); break;
            }
            std::cout << p.id << ": " << r.replacements.size() << " replacement(s)";
            if (p.gold_answer != r.problem.gold_answer) {
                std::cout << ", answer " << p.gold_answer.str() << " -> "
                          << r.problem.gold_answer.str();
            }
            std::cout << "\n";
            for (const std::string& rep : r.replacements) std::cout << "  " << rep << "\n";
            for (const std::string& w : r.warnings) std::cout << "  warning: " << w << "\n";
            out.push_back(std::move(r.problem));
        }
        save_problems_jsonl(output, out);
        std::cout << out.size() << " problem(s) written to " << output << "\n";
        return 0;
    } catch (const perturb_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const dataset_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const solution_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

void apply_endpoint_env(EndpointConfig& cfg) {
    if (const char* v = std::getenv("GSMDS_BASE_URL")) cfg.base_url = v;
    if (const char* v = std::getenv("GSMDS_MODEL")) cfg.model = v;
    if (const char* v = std::getenv("GSMDS_API_KEY_ENV")) cfg.api_key_env = v;
}

EndpointConfig load_endpoint_config_file(const std::string& path) {
    EndpointConfig cfg;
    std::ifstream in(path);
    if (!in) throw harness_error("cannot open endpoint config: " + path);
    nlohmann::json j;
    in >> j;
    cfg.base_url = j.value("base_url", cfg.base_url);
    cfg.model = j.value("model", cfg.model);
    cfg.api_key_env = j.value("api_key_env", cfg.api_key_env);
    cfg.temperature = j.value("temperature", cfg.temperature);
    cfg.top_p = j.value("top_p", cfg.top_p);
    cfg.max_new_tokens = j.value("max_new_tokens", cfg.max_new_tokens);
    cfg.timeout_s = j.value("timeout_s", cfg.timeout_s);
    cfg.max_retries = j.value("max_retries", cfg.max_retries);
    cfg.max_concurrent = j.value("max_concurrent", cfg.max_concurrent);
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discourse-structure toolkit for math word problems"};
    app.require_subcommand(1);

    // structure
    auto* structure = app.add_subcommand("structure", "Generate or validate structure files");
    std::string s_input, s_out_dir = "structures", s_overrides, s_format = "table";
    bool s_validate_only = false;
    structure->add_option("--input,-i", s_input, "Problem dataset (JSONL)");
    structure->add_option("--out-dir,-o", s_out_dir, "Directory for .structure.txt files");
    structure->add_flag("--validate-only", s_validate_only, "Validate existing structure files");
    structure->add_option("--marker-overrides", s_overrides, "Marker lexicon override TSV");
    structure->add_option("--format", s_format, "Diagnostics format: table|jsonl")
        ->check(CLI::IsMember({"table", "jsonl"}));

    // perturb
    auto* perturb = app.add_subcommand("perturb", "Apply a C/N/L-MOD transformation");
    std::string p_input, p_spec, p_kind, p_output = "perturbed.jsonl";
    std::int64_t p_scale = 0;
    perturb->add_option("--input,-i", p_input, "Problem dataset (JSONL)")->required();
    perturb->add_option("--spec", p_spec, "Perturbation spec file");
    perturb->add_option("--kind", p_kind, "c-mod | n-mod | l-mod");
    perturb->add_option("--scale", p_scale, "Uniform N-MOD scale factor");
    perturb->add_option("--output,-o", p_output, "Output dataset (JSONL)");

    // eval
    auto* eval = app.add_subcommand("eval", "Run a DS+/DS- evaluation");
    std::string e_input, e_mode = "ds-minus", e_source = "rule_based", e_structures;
    std::string e_cache, e_manifest = "manifest.jsonl", e_exemplars, e_label;
    std::string e_transport = "http", e_replay, e_config;
    EndpointConfig e_cfg;
    int e_shots = 4;
    eval->add_option("--input,-i", e_input, "Problem dataset (JSONL)")->required();
    eval->add_option("--mode", e_mode, "ds-plus | ds-minus");
    eval->add_option("--structure-source", e_source, "rule_based | endpoint_generated | precomputed");
    eval->add_option("--structures", e_structures, "Structure dir for precomputed source");
    eval->add_option("--cache", e_cache, "Completion cache directory");
    eval->add_option("--manifest", e_manifest, "Manifest output path");
    eval->add_option("--exemplars", e_exemplars, "Exemplar JSONL (defaults to built-ins)");
    eval->add_option("--shots", e_shots, "Exemplars per prompt (default 4)");
    eval->add_option("--label", e_label, "Dataset label for reports");
    eval->add_option("--transport", e_transport, "http | replay")
        ->check(CLI::IsMember({"http", "replay"}));
    eval->add_option("--replay", e_replay, "Replay JSONL for --transport replay");
    eval->add_option("--config", e_config, "Endpoint config JSON file");
    std::string e_endpoint_url, e_model, e_api_key_env;
    double e_temperature = -1.0;
    int e_max_tokens = 0, e_concurrency = 0, e_retries = -1;
    eval->add_option("--endpoint", e_endpoint_url, "Base URL (e.g. http://127.0.0.1:8080/v1)");
    eval->add_option("--model", e_model, "Model name");
    eval->add_option("--api-key-env", e_api_key_env, "Environment variable holding the API key");
    eval->add_option("--temperature", e_temperature, "Sampling temperature (default 0.4)");
    eval->add_option("--max-new-tokens", e_max_tokens, "Generation budget (default 400)");
    eval->add_option("--concurrency", e_concurrency, "Max in-flight requests");
    eval->add_option("--retries", e_retries, "Max retries per request");

    // report
    auto* report = app.add_subcommand("report", "Render the accuracy table from manifests");
    std::vector<std::string> r_manifests;
    std::string r_format = "table";
    report->add_option("--manifest,-m", r_manifests, "Manifest file(s)")->required();
    report->add_option("--format", r_format, "table | jsonl")
        ->check(CLI::IsMember({"table", "jsonl"}));

    CLI11_PARSE(app, argc, argv);

    if (structure->parsed()) {
        if (!s_validate_only && s_input.empty()) {
            std::cerr << "error: --input is required unless --validate-only\n";
            return 1;
        }
        return cmd_structure(s_input, s_out_dir, s_validate_only, s_overrides, s_format);
    }

    if (perturb->parsed()) {
        return cmd_perturb(p_input, p_spec, p_kind, p_scale, p_output);
    }

    if (eval->parsed()) {
        try {
            // Precedence: flag > environment > config file > defaults.
            EndpointConfig cfg = e_config.empty() ? EndpointConfig{} : load_endpoint_config_file(e_config);
            apply_endpoint_env(cfg);
            if (!e_endpoint_url.empty()) cfg.base_url = e_endpoint_url;
            if (!e_model.empty()) cfg.model = e_model;
            if (!e_api_key_env.empty()) cfg.api_key_env = e_api_key_env;
            if (e_temperature >= 0) cfg.temperature = e_temperature;
            if (e_max_tokens > 0) cfg.max_new_tokens = e_max_tokens;
            if (e_concurrency > 0) cfg.max_concurrent = e_concurrency;
            if (e_retries >= 0) cfg.max_retries = e_retries;

            RunOptions options;
            auto mode = eval_mode_from_name(e_mode);
            if (!mode) {
                std::cerr << "error: unknown mode '" << e_mode << "'\n";
                return 1;
            }
            options.mode = *mode;
            auto source = structure_source_from_name(e_source);
            if (!source) {
                std::cerr << "error: unknown structure source '" << e_source << "'\n";
                return 1;
            }
            options.structure_source = *source;
            options.structures_dir = e_structures;
            options.shots = e_shots;
            options.cache_dir = e_cache;
            options.dataset_path = e_input;
            options.dataset_digest = file_digest_hex(e_input);
            options.dataset_label = e_label;
            if (!e_exemplars.empty()) options.exemplars = load_exemplars_jsonl(e_exemplars);

            std::vector<Problem> problems = load_problems_jsonl(e_input);

            std::unique_ptr<ChatEndpoint> endpoint;
            if (e_transport == "replay") {
                if (e_replay.empty()) {
                    std::cerr << "error: --transport replay needs --replay FILE\n";
                    return 1;
                }
                endpoint = std::make_unique<ReplayChatEndpoint>(
                    ReplayChatEndpoint::from_jsonl(e_replay));
            } else {
                endpoint = std::make_unique<HttpChatEndpoint>();
            }

            RunManifest manifest = run_eval(problems, *endpoint, cfg, options);
            save_manifest(e_manifest, manifest);
            std::cout << "records: " << manifest.records.size()
                      << ", correct: " << manifest.correct_count()
                      << ", errored: " << manifest.errored_count() << "\n";
            std::cout << "manifest written to " << e_manifest << "\n";
            return manifest.errored_count() == 0 ? 0 : 2;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
    }

    if (report->parsed()) {
        try {
            std::vector<RunManifest> manifests;
            for (const std::string& path : r_manifests) manifests.push_back(load_manifest(path));
            ReportTable table = score(manifests);
            std::cout << (r_format == "jsonl" ? render_report_jsonl(table)
                                              : render_report_table(table));
            return 0;
        } catch (const MixedDatasets& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
    }
    return 0;
}
