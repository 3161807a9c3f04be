#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

namespace hierrec {

// ---------------------------------------------------------------------------
// Schema

struct Block {
    std::string name;
    std::vector<std::string> vocabulary;
};

// Ordered, named term blocks partitioning one dense vector. Field vectors
// for users and jobs share a schema; the total dimension is the sum of the
// vocabulary sizes.
class BlockSchema {
  public:
    explicit BlockSchema(std::vector<Block> blocks);

    static BlockSchema from_json(const nlohmann::json& j);
    static BlockSchema load(const std::filesystem::path& path);
    nlohmann::json to_json() const;

    std::size_t block_count() const { return blocks_.size(); }
    std::size_t total_dim() const { return total_dim_; }
    const Block& block(std::size_t b) const { return blocks_[b]; }
    std::size_t block_offset(std::size_t b) const { return offsets_[b]; }
    std::size_t block_dim(std::size_t b) const { return blocks_[b].vocabulary.size(); }

    std::optional<std::size_t> block_index(std::string_view name) const;
    // Term index within block b, or nullopt for out-of-vocabulary terms.
    std::optional<std::size_t> term_index(std::size_t b, std::string_view term) const;

    // Fingerprint of the canonical JSON form; stored models and field
    // stores refuse to mix schemas with different fingerprints.
    const std::string& hash() const { return hash_; }

  private:
    std::vector<Block> blocks_;
    std::vector<std::size_t> offsets_;
    std::size_t total_dim_ = 0;
    std::unordered_map<std::string, std::size_t> block_by_name_;
    std::vector<std::unordered_map<std::string, std::size_t>> term_by_name_;
    std::string hash_;
};

// ---------------------------------------------------------------------------
// Field vectors

// Dense block-partitioned vector conforming to a BlockSchema. Entries are
// dimensionless weights; profile-derived vectors are L2-normalized per
// block, learned vectors are unconstrained reals.
struct FieldVector {
    std::vector<double> values;

    bool operator==(const FieldVector&) const = default;
};

std::span<double> block_span(FieldVector& v, const BlockSchema& schema, std::size_t b);
std::span<const double> block_span(const FieldVector& v, const BlockSchema& schema,
                                   std::size_t b);

nlohmann::json field_vector_to_json(const FieldVector& v, const BlockSchema& schema);
// Validates block presence, exact lengths, and finiteness.
FieldVector field_vector_from_json(const nlohmann::json& j, const BlockSchema& schema);

// ---------------------------------------------------------------------------
// Entities and events

struct UserProfile {
    std::string user_id;
    // Per block, in-vocabulary case-folded terms in file order (repeats keep
    // multiset semantics).
    std::vector<std::vector<std::string>> terms;
};

struct JobPosting {
    std::string job_id;
    std::vector<std::vector<std::string>> terms;
};

enum class Action { Impression, View, Apply };

std::string_view action_name(Action a);
Action action_from_name(std::string_view name);

struct InteractionEvent {
    std::string user_id;
    std::string job_id;
    Action action = Action::Impression;
    int position = 1;  // rank at which the job was shown, 1-based
    int day = 0;
};

// ---------------------------------------------------------------------------
// Loading

struct LoadStats {
    std::size_t dropped_terms = 0;  // out-of-vocabulary occurrences
};

std::vector<UserProfile> load_users(const std::filesystem::path& path,
                                    const BlockSchema& schema, LoadStats* stats = nullptr);
std::vector<JobPosting> load_jobs(const std::filesystem::path& path, const BlockSchema& schema,
                                  LoadStats* stats = nullptr);
std::vector<InteractionEvent> load_events(const std::filesystem::path& path);

// Canonical serialization: sorted object keys, per-block terms sorted with
// repeats kept. load(save(x)) == x and save(load(f)) is byte-stable.
void save_users(const std::filesystem::path& path, std::span<const UserProfile> users,
                const BlockSchema& schema);
void save_jobs(const std::filesystem::path& path, std::span<const JobPosting> jobs,
               const BlockSchema& schema);
void save_events(const std::filesystem::path& path, std::span<const InteractionEvent> events);

// Per block: entry i = multiplicity of vocabulary term i, then the block is
// L2-normalized; blocks with no in-vocabulary terms stay all-zero.
FieldVector vectorize_terms(const std::vector<std::vector<std::string>>& terms,
                            const BlockSchema& schema);

// ---------------------------------------------------------------------------
// Dataset

// Users, jobs, and interaction events with id -> offset maps and
// profile-derived vectors. Assembly rejects duplicate ids and events that
// reference unknown users or jobs.
struct Dataset {
    BlockSchema schema;
    std::vector<UserProfile> users;
    std::vector<JobPosting> jobs;
    std::vector<InteractionEvent> events;

    std::vector<FieldVector> user_vectors;  // profile-derived, per user offset
    std::vector<FieldVector> job_vectors;

    std::unordered_map<std::string, std::size_t> user_index;
    std::unordered_map<std::string, std::size_t> job_index;

    // Resolved per-event offsets, parallel to `events`.
    std::vector<std::size_t> event_user;
    std::vector<std::size_t> event_job;

    std::size_t user_offset(std::string_view user_id) const;
    std::size_t job_offset(std::string_view job_id) const;
};

Dataset assemble_dataset(BlockSchema schema, std::vector<UserProfile> users,
                         std::vector<JobPosting> jobs, std::vector<InteractionEvent> events);

// Loads users.jsonl / jobs.jsonl / events.jsonl from a directory and
// assembles them against the schema.
Dataset load_dataset(const std::filesystem::path& dir, const BlockSchema& schema,
                     LoadStats* stats = nullptr);

// ---------------------------------------------------------------------------
// Small file helpers shared across modules

std::string read_text_file(const std::filesystem::path& path);
// Writes via a temp file in the same directory followed by rename, so
// readers observe either the old or the new complete file.
void write_text_file_atomic(const std::filesystem::path& path, std::string_view content);
nlohmann::json parse_json_file(const std::filesystem::path& path);

std::string fold_case(std::string_view term);

}  // namespace hierrec
