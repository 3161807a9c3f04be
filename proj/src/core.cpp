#include "hierrec/core.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "hierrec/errors.hpp"
#include "hierrec/hash.hpp"
#include "hierrec/kernels.hpp"

namespace hierrec {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Schema

BlockSchema::BlockSchema(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
    if (blocks_.empty()) throw ConfigError("schema: at least one block required");
    offsets_.reserve(blocks_.size());
    term_by_name_.resize(blocks_.size());
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
        const Block& blk = blocks_[b];
        if (blk.name.empty()) throw ConfigError("schema: empty block name");
        if (blk.vocabulary.empty())
            throw ConfigError("schema: block '" + blk.name + "' has empty vocabulary");
        if (!block_by_name_.emplace(blk.name, b).second)
            throw ConfigError("schema: duplicate block name '" + blk.name + "'");
        offsets_.push_back(total_dim_);
        for (std::size_t t = 0; t < blk.vocabulary.size(); ++t) {
            if (!term_by_name_[b].emplace(blk.vocabulary[t], t).second)
                throw ConfigError("schema: duplicate term '" + blk.vocabulary[t] +
                                  "' in block '" + blk.name + "'");
        }
        total_dim_ += blk.vocabulary.size();
    }
    hash_ = hex64(fnv1a64(to_json().dump()));
}

BlockSchema BlockSchema::from_json(const json& j) {
    if (!j.is_object() || !j.contains("blocks") || !j["blocks"].is_array())
        throw ConfigError("schema: expected {\"blocks\": [...]}");
    std::vector<Block> blocks;
    for (const auto& jb : j["blocks"]) {
        Block blk;
        blk.name = jb.at("name").get<std::string>();
        for (const auto& term : jb.at("vocabulary"))
            blk.vocabulary.push_back(fold_case(term.get<std::string>()));
        blocks.push_back(std::move(blk));
    }
    return BlockSchema(std::move(blocks));
}

BlockSchema BlockSchema::load(const std::filesystem::path& path) {
    return from_json(parse_json_file(path));
}

json BlockSchema::to_json() const {
    json jblocks = json::array();
    for (const Block& blk : blocks_)
        jblocks.push_back({{"name", blk.name}, {"vocabulary", blk.vocabulary}});
    return json{{"blocks", jblocks}};
}

std::optional<std::size_t> BlockSchema::block_index(std::string_view name) const {
    auto it = block_by_name_.find(std::string(name));
    if (it == block_by_name_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> BlockSchema::term_index(std::size_t b, std::string_view term) const {
    auto it = term_by_name_[b].find(std::string(term));
    if (it == term_by_name_[b].end()) return std::nullopt;
    return it->second;
}

// ---------------------------------------------------------------------------
// Field vectors

std::span<double> block_span(FieldVector& v, const BlockSchema& schema, std::size_t b) {
    return std::span<double>(v.values).subspan(schema.block_offset(b), schema.block_dim(b));
}

std::span<const double> block_span(const FieldVector& v, const BlockSchema& schema,
                                   std::size_t b) {
    return std::span<const double>(v.values).subspan(schema.block_offset(b),
                                                     schema.block_dim(b));
}

json field_vector_to_json(const FieldVector& v, const BlockSchema& schema) {
    json out = json::object();
    for (std::size_t b = 0; b < schema.block_count(); ++b) {
        auto s = block_span(v, schema, b);
        out[schema.block(b).name] = std::vector<double>(s.begin(), s.end());
    }
    return out;
}

FieldVector field_vector_from_json(const json& j, const BlockSchema& schema) {
    FieldVector v;
    v.values.assign(schema.total_dim(), 0.0);
    for (std::size_t b = 0; b < schema.block_count(); ++b) {
        const std::string& name = schema.block(b).name;
        if (!j.contains(name))
            throw DataError("field vector: missing block '" + name + "'");
        const auto& arr = j[name];
        if (!arr.is_array() || arr.size() != schema.block_dim(b))
            throw DataError("field vector: block '" + name + "' has wrong length");
        auto s = block_span(v, schema, b);
        for (std::size_t i = 0; i < s.size(); ++i) {
            s[i] = arr[i].get<double>();
            if (!std::isfinite(s[i]))
                throw DataError("field vector: non-finite entry in block '" + name + "'");
        }
    }
    return v;
}

// ---------------------------------------------------------------------------
// Entities and events

std::string_view action_name(Action a) {
    switch (a) {
        case Action::Impression:
            return "impression";
        case Action::View:
            return "view";
        case Action::Apply:
            return "apply";
    }
    return "impression";
}

Action action_from_name(std::string_view name) {
    if (name == "impression") return Action::Impression;
    if (name == "view") return Action::View;
    if (name == "apply") return Action::Apply;
    throw ConfigError("unknown action '" + std::string(name) + "'");
}

std::string fold_case(std::string_view term) {
    std::string out(term);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

// ---------------------------------------------------------------------------
// Loading

namespace {

// Applies fn to each non-empty line; parse failures are rethrown with the
// 1-based line number attached.
template <typename Fn>
void for_each_jsonl(const std::filesystem::path& path, Fn&& fn) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path.string());
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                              ": parse error: " + e.what());
        }
        try {
            fn(j);
        } catch (const json::exception& e) {
            throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
}

// Shared by users and jobs: reads the id plus one term array per block.
std::vector<std::vector<std::string>> read_terms(const json& j, const BlockSchema& schema,
                                                 LoadStats* stats) {
    std::vector<std::vector<std::string>> terms(schema.block_count());
    for (std::size_t b = 0; b < schema.block_count(); ++b) {
        const std::string& name = schema.block(b).name;
        if (!j.contains(name)) continue;
        for (const auto& t : j.at(name)) {
            std::string folded = fold_case(t.get<std::string>());
            if (schema.term_index(b, folded).has_value()) {
                terms[b].push_back(std::move(folded));
            } else if (stats != nullptr) {
                ++stats->dropped_terms;
            }
        }
    }
    return terms;
}

json terms_to_json(const std::vector<std::vector<std::string>>& terms,
                   const BlockSchema& schema) {
    json out = json::object();
    for (std::size_t b = 0; b < schema.block_count(); ++b) {
        std::vector<std::string> sorted = terms[b];
        std::sort(sorted.begin(), sorted.end());
        out[schema.block(b).name] = sorted;
    }
    return out;
}

}  // namespace

std::vector<UserProfile> load_users(const std::filesystem::path& path,
                                    const BlockSchema& schema, LoadStats* stats) {
    std::vector<UserProfile> users;
    for_each_jsonl(path, [&](const json& j) {
        UserProfile u;
        u.user_id = j.at("user_id").get<std::string>();
        if (u.user_id.empty()) throw DataError(path.string() + ": empty user_id");
        u.terms = read_terms(j, schema, stats);
        users.push_back(std::move(u));
    });
    return users;
}

std::vector<JobPosting> load_jobs(const std::filesystem::path& path, const BlockSchema& schema,
                                  LoadStats* stats) {
    std::vector<JobPosting> jobs;
    for_each_jsonl(path, [&](const json& j) {
        JobPosting job;
        job.job_id = j.at("job_id").get<std::string>();
        if (job.job_id.empty()) throw DataError(path.string() + ": empty job_id");
        job.terms = read_terms(j, schema, stats);
        jobs.push_back(std::move(job));
    });
    return jobs;
}

std::vector<InteractionEvent> load_events(const std::filesystem::path& path) {
    std::vector<InteractionEvent> events;
    for_each_jsonl(path, [&](const json& j) {
        InteractionEvent e;
        e.user_id = j.at("user_id").get<std::string>();
        e.job_id = j.at("job_id").get<std::string>();
        e.action = action_from_name(j.at("action").get<std::string>());
        e.position = j.at("position").get<int>();
        e.day = j.at("day").get<int>();
        if (e.position < 1)
            throw DataError(path.string() + ": position must be >= 1, got " +
                            std::to_string(e.position));
        events.push_back(std::move(e));
    });
    return events;
}

void save_users(const std::filesystem::path& path, std::span<const UserProfile> users,
                const BlockSchema& schema) {
    std::string out;
    for (const UserProfile& u : users) {
        json j = terms_to_json(u.terms, schema);
        j["user_id"] = u.user_id;
        out += j.dump();
        out += '\n';
    }
    write_text_file_atomic(path, out);
}

void save_jobs(const std::filesystem::path& path, std::span<const JobPosting> jobs,
               const BlockSchema& schema) {
    std::string out;
    for (const JobPosting& job : jobs) {
        json j = terms_to_json(job.terms, schema);
        j["job_id"] = job.job_id;
        out += j.dump();
        out += '\n';
    }
    write_text_file_atomic(path, out);
}

void save_events(const std::filesystem::path& path, std::span<const InteractionEvent> events) {
    std::string out;
    for (const InteractionEvent& e : events) {
        json j{{"user_id", e.user_id},
               {"job_id", e.job_id},
               {"action", std::string(action_name(e.action))},
               {"position", e.position},
               {"day", e.day}};
        out += j.dump();
        out += '\n';
    }
    write_text_file_atomic(path, out);
}

FieldVector vectorize_terms(const std::vector<std::vector<std::string>>& terms,
                            const BlockSchema& schema) {
    FieldVector v;
    v.values.assign(schema.total_dim(), 0.0);
    for (std::size_t b = 0; b < schema.block_count() && b < terms.size(); ++b) {
        auto s = block_span(v, schema, b);
        for (const std::string& term : terms[b]) {
            if (auto idx = schema.term_index(b, term)) s[*idx] += 1.0;
        }
        const double norm = std::sqrt(kernels::squared_l2(s));
        if (norm > 0.0) kernels::scale(s, 1.0 / norm);
    }
    return v;
}

// ---------------------------------------------------------------------------
// Dataset

std::size_t Dataset::user_offset(std::string_view user_id) const {
    auto it = user_index.find(std::string(user_id));
    if (it == user_index.end())
        throw DataError("unknown user '" + std::string(user_id) + "'");
    return it->second;
}

std::size_t Dataset::job_offset(std::string_view job_id) const {
    auto it = job_index.find(std::string(job_id));
    if (it == job_index.end()) throw DataError("unknown job '" + std::string(job_id) + "'");
    return it->second;
}

Dataset assemble_dataset(BlockSchema schema, std::vector<UserProfile> users,
                         std::vector<JobPosting> jobs, std::vector<InteractionEvent> events) {
    Dataset d{.schema = std::move(schema),
              .users = std::move(users),
              .jobs = std::move(jobs),
              .events = std::move(events)};

    d.user_vectors.reserve(d.users.size());
    for (std::size_t i = 0; i < d.users.size(); ++i) {
        if (!d.user_index.emplace(d.users[i].user_id, i).second)
            throw DataError("duplicate user_id '" + d.users[i].user_id + "'");
        d.user_vectors.push_back(vectorize_terms(d.users[i].terms, d.schema));
    }
    d.job_vectors.reserve(d.jobs.size());
    for (std::size_t i = 0; i < d.jobs.size(); ++i) {
        if (!d.job_index.emplace(d.jobs[i].job_id, i).second)
            throw DataError("duplicate job_id '" + d.jobs[i].job_id + "'");
        d.job_vectors.push_back(vectorize_terms(d.jobs[i].terms, d.schema));
    }

    d.event_user.reserve(d.events.size());
    d.event_job.reserve(d.events.size());
    for (const InteractionEvent& e : d.events) {
        auto uit = d.user_index.find(e.user_id);
        if (uit == d.user_index.end())
            throw DataError("event references unknown user '" + e.user_id + "'");
        auto jit = d.job_index.find(e.job_id);
        if (jit == d.job_index.end())
            throw DataError("event references unknown job '" + e.job_id + "'");
        d.event_user.push_back(uit->second);
        d.event_job.push_back(jit->second);
    }
    return d;
}

Dataset load_dataset(const std::filesystem::path& dir, const BlockSchema& schema,
                     LoadStats* stats) {
    return assemble_dataset(schema, load_users(dir / "users.jsonl", schema, stats),
                            load_jobs(dir / "jobs.jsonl", schema, stats),
                            load_events(dir / "events.jsonl"));
}

// ---------------------------------------------------------------------------
// File helpers

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file_atomic(const std::filesystem::path& path, std::string_view content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw ConfigError("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

json parse_json_file(const std::filesystem::path& path) {
    try {
        return json::parse(read_text_file(path));
    } catch (const json::exception& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

}  // namespace hierrec
