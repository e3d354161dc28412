#include "evatlas/config.hpp"

#include "evatlas/errors.hpp"
#include "evatlas/numeric.hpp"

#include <cmath>

namespace evatlas {

std::string_view to_string(WeightRule v) {
    return v == WeightRule::SampleSize ? "sample_size" : "uniform";
}

std::optional<WeightRule> parse_weight_rule(std::string_view token) {
    if (token == "sample_size") return WeightRule::SampleSize;
    if (token == "uniform") return WeightRule::Uniform;
    return std::nullopt;
}

void HeterogeneityConfig::validate() const {
    if (!(delta_het > 0.0))
        throw ConfigError("heterogeneity: delta_het must be > 0");
}

double QualityConfig::grade_score(Grade g) const {
    switch (g) {
        case Grade::A: return grade_a;
        case Grade::B: return grade_b;
        case Grade::C: return grade_c;
    }
    return 0.0;
}

double QualityConfig::adjustment_score(Adjustment a) const {
    switch (a) {
        case Adjustment::None: return adj_none;
        case Adjustment::Basic: return adj_basic;
        case Adjustment::Rich: return adj_rich;
    }
    return 0.0;
}

void QualityConfig::validate() const {
    if (!(grade_a > grade_b && grade_b > grade_c && grade_c > 0.0) || grade_a > 1.0)
        throw ConfigError("quality: grade map must be strictly decreasing within (0, 1]");
    if (!(adj_rich > adj_basic && adj_basic > adj_none) || adj_none < 0.0 || adj_rich > 1.0)
        throw ConfigError("quality: adjustment map must be strictly increasing within [0, 1]");
    if (n_max <= 0) throw ConfigError("quality: n_max must be positive");
    if (!(w_ref > 0.0)) throw ConfigError("quality: w_ref must be > 0");
    if (!(w_g > 0.0 && w_n > 0.0 && w_p > 0.0 && w_a > 0.0))
        throw ConfigError("quality: component weights must be positive");
    if (std::fabs(w_g + w_n + w_p + w_a - 1.0) > 1e-9)
        throw ConfigError("quality: component weights must sum to 1");
}

std::string_view to_string(AblationMode v) {
    switch (v) {
        case AblationMode::None: return "none";
        case AblationMode::NoCanonical: return "no_canonical";
        case AblationMode::NoAlignTau: return "no_align_tau";
        case AblationMode::WeakKey: return "weak_key";
    }
    return "?";
}

std::optional<AblationMode> parse_ablation_mode(std::string_view token) {
    if (token == "none") return AblationMode::None;
    if (token == "no_canonical") return AblationMode::NoCanonical;
    if (token == "no_align_tau") return AblationMode::NoAlignTau;
    if (token == "weak_key") return AblationMode::WeakKey;
    return std::nullopt;
}

double BuildConfig::z() const {
    return coverage_z(coverage);
}

void BuildConfig::validate() const {
    alignment.validate();
    heterogeneity.validate();
    quality.validate();
    if (!(coverage > 0.0) || !(coverage < 1.0))
        throw ConfigError("coverage must lie strictly inside (0, 1)");
    if (measures.types().empty())
        throw ConfigError("measure vocabulary must not be empty");
}

} // namespace evatlas
