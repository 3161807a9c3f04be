#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "hierrec/core.hpp"

namespace hierrec {

enum class FeatureKind { Cosine, Jaccard };

std::string_view feature_kind_name(FeatureKind k);
FeatureKind feature_kind_from_name(std::string_view name);

struct FeatureDescriptor {
    std::string user_block;
    std::string job_block;
    FeatureKind kind = FeatureKind::Cosine;
};

// Descriptor order is the canonical feature order; optional raw blocks come
// after the descriptors and the bias term is always last.
struct FeatureConfig {
    std::vector<FeatureDescriptor> descriptors;
    bool include_user_raw = false;
    bool include_job_raw = false;
    bool include_bias = true;

    static FeatureConfig from_json(const nlohmann::json& j);
    static FeatureConfig load(const std::filesystem::path& path);
    nlohmann::json to_json() const;
    std::string hash() const;
};

// a.b / (|a||b|); 0 when either norm is 0.
double cosine(std::span<const double> a, std::span<const double> b);
// |support(a) & support(b)| / |support(a) | support(b)|; 0 when both empty.
double jaccard(std::span<const double> a, std::span<const double> b);

// Row-major dense matrix, just large enough for jacobians.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    void resize(std::size_t r, std::size_t c) {
        rows = r;
        cols = c;
        data.assign(r * c, 0.0);
    }
    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    std::span<double> row(std::size_t r) { return std::span<double>(data).subspan(r * cols, cols); }
    std::span<const double> row(std::size_t r) const {
        return std::span<const double>(data).subspan(r * cols, cols);
    }
};

// FeatureConfig resolved against a schema: block names validated and bound
// to offsets once, then reused across the training inner loops.
class FeatureExtractor {
  public:
    FeatureExtractor(FeatureConfig config, const BlockSchema& schema);

    const FeatureConfig& config() const { return config_; }
    const BlockSchema& schema() const { return *schema_; }
    std::size_t dim() const { return dim_; }
    const std::vector<std::string>& names() const { return names_; }

    // Descriptors in order, then raw user block, raw job block, bias.
    void extract(const FieldVector& user, const FieldVector& job,
                 std::span<double> out) const;
    std::vector<double> extract(const FieldVector& user, const FieldVector& job) const;

    // d(feature)/d(user vector), dim() x total_dim rows. Cosine rows use the
    // analytic gradient with the zero-norm convention (zero row); raw user
    // rows are identity onto their block; job and bias rows are zero.
    // Jaccard descriptors are not differentiable: throws NumericError.
    void jacobian_wrt_user(const FieldVector& user, const FieldVector& job, Matrix& out) const;
    bool differentiable_in_user() const { return differentiable_; }

  private:
    struct Bound {
        std::size_t user_block;
        std::size_t job_block;
        FeatureKind kind;
    };

    FeatureConfig config_;
    const BlockSchema* schema_;
    std::vector<Bound> bound_;
    std::size_t dim_ = 0;
    bool differentiable_ = true;
    std::vector<std::string> names_;
};

}  // namespace hierrec
