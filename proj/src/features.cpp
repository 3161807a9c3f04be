#include "hierrec/features.hpp"

#include <cmath>

#include "hierrec/errors.hpp"
#include "hierrec/hash.hpp"
#include "hierrec/kernels.hpp"

namespace hierrec {

using nlohmann::json;

std::string_view feature_kind_name(FeatureKind k) {
    return k == FeatureKind::Cosine ? "cosine" : "jaccard";
}

FeatureKind feature_kind_from_name(std::string_view name) {
    if (name == "cosine") return FeatureKind::Cosine;
    if (name == "jaccard") return FeatureKind::Jaccard;
    throw ConfigError("unknown feature kind '" + std::string(name) + "'");
}

FeatureConfig FeatureConfig::from_json(const json& j) {
    FeatureConfig cfg;
    for (const auto& jd : j.at("descriptors")) {
        FeatureDescriptor d;
        d.user_block = jd.at("user_block").get<std::string>();
        d.job_block = jd.at("job_block").get<std::string>();
        d.kind = feature_kind_from_name(jd.at("kind").get<std::string>());
        cfg.descriptors.push_back(std::move(d));
    }
    if (cfg.descriptors.empty())
        throw ConfigError("feature config: at least one descriptor required");
    cfg.include_user_raw = j.value("include_user_raw", false);
    cfg.include_job_raw = j.value("include_job_raw", false);
    cfg.include_bias = j.value("include_bias", true);
    return cfg;
}

FeatureConfig FeatureConfig::load(const std::filesystem::path& path) {
    return from_json(parse_json_file(path));
}

json FeatureConfig::to_json() const {
    json jds = json::array();
    for (const FeatureDescriptor& d : descriptors)
        jds.push_back({{"user_block", d.user_block},
                       {"job_block", d.job_block},
                       {"kind", std::string(feature_kind_name(d.kind))}});
    return json{{"descriptors", jds},
                {"include_user_raw", include_user_raw},
                {"include_job_raw", include_job_raw},
                {"include_bias", include_bias}};
}

std::string FeatureConfig::hash() const {
    return hex64(fnv1a64(to_json().dump()));
}

double cosine(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw NumericError("cosine: dimension mismatch");
    const double na = std::sqrt(kernels::squared_l2(a));
    const double nb = std::sqrt(kernels::squared_l2(b));
    if (na == 0.0 || nb == 0.0) return 0.0;
    return kernels::dot(a, b) / (na * nb);
}

double jaccard(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw NumericError("jaccard: dimension mismatch");
    std::size_t inter = 0;
    std::size_t uni = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const bool in_a = a[i] != 0.0;
        const bool in_b = b[i] != 0.0;
        inter += (in_a && in_b) ? 1 : 0;
        uni += (in_a || in_b) ? 1 : 0;
    }
    if (uni == 0) return 0.0;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

FeatureExtractor::FeatureExtractor(FeatureConfig config, const BlockSchema& schema)
    : config_(std::move(config)), schema_(&schema) {
    if (config_.descriptors.empty())
        throw ConfigError("feature config: at least one descriptor required");
    for (const FeatureDescriptor& d : config_.descriptors) {
        auto ub = schema.block_index(d.user_block);
        if (!ub) throw ConfigError("feature config: unknown user block '" + d.user_block + "'");
        auto jb = schema.block_index(d.job_block);
        if (!jb) throw ConfigError("feature config: unknown job block '" + d.job_block + "'");
        bound_.push_back({*ub, *jb, d.kind});
        if (d.kind == FeatureKind::Jaccard) differentiable_ = false;
        names_.push_back(std::string(feature_kind_name(d.kind)) + "(" + d.user_block + "," +
                         d.job_block + ")");
    }
    dim_ = bound_.size();
    if (config_.include_user_raw) {
        dim_ += schema.total_dim();
        for (std::size_t b = 0; b < schema.block_count(); ++b)
            for (const std::string& term : schema.block(b).vocabulary)
                names_.push_back("user." + schema.block(b).name + "." + term);
    }
    if (config_.include_job_raw) {
        dim_ += schema.total_dim();
        for (std::size_t b = 0; b < schema.block_count(); ++b)
            for (const std::string& term : schema.block(b).vocabulary)
                names_.push_back("job." + schema.block(b).name + "." + term);
    }
    if (config_.include_bias) {
        dim_ += 1;
        names_.push_back("bias");
    }
}

void FeatureExtractor::extract(const FieldVector& user, const FieldVector& job,
                               std::span<double> out) const {
    if (out.size() != dim_) throw NumericError("feature extract: output size mismatch");
    std::size_t k = 0;
    for (const Bound& bd : bound_) {
        auto u = block_span(user, *schema_, bd.user_block);
        auto j = block_span(job, *schema_, bd.job_block);
        out[k++] = bd.kind == FeatureKind::Cosine ? cosine(u, j) : jaccard(u, j);
    }
    if (config_.include_user_raw) {
        for (double v : user.values) out[k++] = v;
    }
    if (config_.include_job_raw) {
        for (double v : job.values) out[k++] = v;
    }
    if (config_.include_bias) out[k++] = 1.0;
}

std::vector<double> FeatureExtractor::extract(const FieldVector& user,
                                              const FieldVector& job) const {
    std::vector<double> out(dim_);
    extract(user, job, out);
    return out;
}

void FeatureExtractor::jacobian_wrt_user(const FieldVector& user, const FieldVector& job,
                                         Matrix& out) const {
    if (!differentiable_)
        throw NumericError("feature jacobian: jaccard descriptors are not differentiable");
    const std::size_t d = schema_->total_dim();
    out.resize(dim_, d);
    std::size_t k = 0;
    for (const Bound& bd : bound_) {
        auto u = block_span(user, *schema_, bd.user_block);
        auto j = block_span(job, *schema_, bd.job_block);
        const double nu = std::sqrt(kernels::squared_l2(u));
        const double nj = std::sqrt(kernels::squared_l2(j));
        auto row = out.row(k++);
        if (nu == 0.0 || nj == 0.0) continue;  // zero-norm convention: zero row
        // d cos / d u = j/(|u||j|) - (u.j) u / (|u|^3 |j|)
        const double uj = kernels::dot(u, j);
        const std::size_t off = schema_->block_offset(bd.user_block);
        auto target = row.subspan(off, u.size());
        kernels::axpy(1.0 / (nu * nj), j, target);
        kernels::axpy(-uj / (nu * nu * nu * nj), u, target);
    }
    if (config_.include_user_raw) {
        for (std::size_t i = 0; i < d; ++i) out.at(k + i, i) = 1.0;
        k += d;
    }
    // Raw job rows and the bias row stay zero.
}

}  // namespace hierrec
