#pragma once

// Build-time tunables: alignment policy, heterogeneity threshold, quality
// weights, interval coverage, measure-type vocabulary, and the optional
// ablation switch. A BuildConfig travels with the atlas it produced.

#include "evatlas/evidence.hpp"
#include "evatlas/horizon.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace evatlas {

enum class WeightRule { SampleSize, Uniform };

std::string_view to_string(WeightRule v);
std::optional<WeightRule> parse_weight_rule(std::string_view token);

struct HeterogeneityConfig {
    double delta_het = 0.1;  // dispersion threshold on the canonical scale
    WeightRule weight_rule = WeightRule::SampleSize;

    void validate() const;  // throws ConfigError
    bool operator==(const HeterogeneityConfig&) const = default;
};

struct QualityConfig {
    // Grade and adjustment maps; must stay strictly order-preserving.
    double grade_a = 1.0;
    double grade_b = 2.0 / 3.0;
    double grade_c = 1.0 / 3.0;
    double adj_none = 0.0;
    double adj_basic = 0.5;
    double adj_rich = 1.0;

    std::int64_t n_max = 100000;  // saturation point of the sample-size score
    double w_ref = 0.5;           // reference interval width for the precision score

    // Component weights; positive, sum to 1.
    double w_g = 0.4;
    double w_n = 0.2;
    double w_p = 0.2;
    double w_a = 0.2;

    double grade_score(Grade g) const;
    double adjustment_score(Adjustment a) const;

    void validate() const;  // throws ConfigError
    bool operator==(const QualityConfig&) const = default;
};

// Key/normalization ablations for sensitivity runs. Conflict detection and
// selection are untouched by all of them.
enum class AblationMode {
    None,
    NoCanonical,  // skip scale normalization; key gains (m_type, reported_scale)
    NoAlignTau,   // key uses the raw horizon token instead of the aligned class
    WeakKey,      // key drops the contrast type
};

std::string_view to_string(AblationMode v);
std::optional<AblationMode> parse_ablation_mode(std::string_view token);

struct BuildConfig {
    AlignmentConfig alignment = AlignmentConfig::defaults();
    HeterogeneityConfig heterogeneity;
    QualityConfig quality;
    MeasureRegistry measures = MeasureRegistry::defaults();
    double coverage = 0.95;  // two-sided coverage for derived intervals
    AblationMode ablation = AblationMode::None;

    static BuildConfig defaults() { return BuildConfig{}; }

    double z() const;        // critical value for `coverage`
    void validate() const;   // throws ConfigError

    bool operator==(const BuildConfig&) const = default;
};

} // namespace evatlas
