#pragma once
// DS+/DS- evaluation runs: structure acquisition, prompt assembly, endpoint
// queries through the cache, answer scoring, manifests and the report table.

#include <array>
#include <string>
#include <vector>

#include "gsmds/cache.hpp"
#include "gsmds/endpoint.hpp"
#include "gsmds/model.hpp"
#include "gsmds/structure_io.hpp"

namespace gsmds {

struct harness_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct MixedDatasets : harness_error {
    using harness_error::harness_error;
};

enum class StructureSource { rule_based, endpoint_generated, precomputed };

std::optional<StructureSource> structure_source_from_name(std::string_view name);
std::string structure_source_name(StructureSource s);

struct RunOptions {
    EvalMode mode = EvalMode::ds_minus;
    StructureSource structure_source = StructureSource::rule_based;
    std::string structures_dir;  // for StructureSource::precomputed
    int shots = 4;               // exemplars per prompt
    std::vector<Exemplar> exemplars;  // defaults to built_in_exemplars()
    std::string cache_dir;       // empty disables caching
    std::string dataset_path;
    std::string dataset_digest;
    std::string dataset_label;   // report column group, defaults to path stem
};

struct RunManifest {
    std::string dataset_path;
    std::string dataset_digest;
    std::string dataset_label;
    EvalMode mode = EvalMode::ds_minus;
    StructureSource structure_source = StructureSource::rule_based;
    std::string model;
    EndpointConfig endpoint;  // api key itself is never stored
    std::string exemplar_digest;
    int shots = 4;
    std::string answer_matching = "exact-rational";
    std::string timestamp;  // ISO 8601; excluded from reproducibility checks
    std::vector<EvalRecord> records;  // ordered by problem id

    std::size_t correct_count() const;
    std::size_t errored_count() const;
    double accuracy_percent() const;  // errored and unextracted count as wrong
};

// Runs every problem: structure (DS+ only), prompt, completion via cache,
// answer extraction, exact-rational comparison. Endpoint failures mark the
// record errored and the run continues. At most cfg.max_concurrent requests
// are in flight; records are ordered by problem id regardless of completion
// order.
RunManifest run_eval(const std::vector<Problem>& problems, ChatEndpoint& endpoint,
                     const EndpointConfig& cfg, const RunOptions& options);

// JSONL: one manifest header line, then one line per record. Prompts are
// persisted as digests.
std::string manifest_to_jsonl(const RunManifest& manifest, bool include_timestamp = true);
void save_manifest(const std::string& path, const RunManifest& manifest);
RunManifest load_manifest(const std::string& path);

std::string exemplar_set_digest(const std::vector<Exemplar>& exemplars);

// Report table: rows = models, column groups = dataset labels with DS-/DS+
// sub-columns, plus an Overall group averaging the *-MOD variants.
struct ReportCell {
    bool present = false;
    double accuracy_percent = 0.0;
};

struct ReportTable {
    std::vector<std::string> models;           // row order
    std::vector<std::string> groups;           // column group order, "Overall" last
    // cells[row][group][0] = DS-, [1] = DS+
    std::vector<std::vector<std::array<ReportCell, 2>>> cells;
};

// Throws MixedDatasets when two manifests in one dataset group disagree on
// the dataset digest.
ReportTable score(const std::vector<RunManifest>& manifests);

std::string render_report_table(const ReportTable& table);
std::string render_report_jsonl(const ReportTable& table);

}  // namespace gsmds
