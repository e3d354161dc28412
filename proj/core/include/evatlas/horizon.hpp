#pragma once

// Horizon alignment: map raw reporting horizons onto a small set of canonical
// classes (semantics + day bin) so that "12 months", "1 year" and "52 weeks"
// land in the same place. Binning is fuzzy: a duration snaps to the bin whose
// representative day count is nearest in relative terms, provided the relative
// gap stays within a tolerance; otherwise plain interval membership decides.

#include "evatlas/evidence.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace evatlas {

enum class HorizonSem { Acute, Fixed, Tte, Unknown };

std::string_view to_string(HorizonSem v);
std::optional<HorizonSem> parse_horizon_sem(std::string_view token);

struct CanonicalHorizonClass {
    HorizonSem h_sem = HorizonSem::Unknown;
    std::optional<int> h_bin;  // 1-based day-bin index; absent for unbinned tte/unknown

    // "sem:bin" with "-" for an absent bin, e.g. "fixed:6", "tte:-".
    std::string encode() const;
    static std::optional<CanonicalHorizonClass> decode(std::string_view text);

    bool operator==(const CanonicalHorizonClass&) const = default;
};

struct AlignmentConfig {
    // Unit token -> days. Unknown tokens are hard errors: the table must
    // enumerate every unit the corpus uses.
    std::map<std::string, double> unit_to_days;

    // Ascending upper edges of the day bins. Bin 1 is [0, e1]; bin j>1 is
    // (e_{j-1}, e_j]; one final open bin (e_last, inf) completes the partition.
    std::vector<double> bin_upper_edges;

    // One representative duration per bin (strictly increasing, one per bin
    // including the open tail), used for fuzzy matching.
    std::vector<double> representatives;

    double rho = 0.1;          // max relative gap for a fuzzy snap
    double delta_acute = 7.0;  // durations <= this many days are acute

    static AlignmentConfig defaults();

    int bin_count() const { return static_cast<int>(bin_upper_edges.size()) + 1; }
    int exact_bin(double days) const;  // 1-based interval membership

    void validate() const;  // throws ConfigError
    bool operator==(const AlignmentConfig&) const = default;
};

struct AlignmentRecord {
    RawHorizon raw_horizon = MissingHorizon{"unspecified"};
    std::optional<double> extracted_days;
    bool fuzzy_used = false;
    std::optional<int> matched_bin;
    std::optional<double> relative_diff;  // |d - rep(bin)| / rep(bin) for the matched bin

    bool operator==(const AlignmentRecord&) const = default;
};

// Normalized duration in days: duration and interval lengths convert through
// the unit table; tte yields its follow-up when reported; missing yields
// nothing. Throws UnknownUnitError for a unit the table does not list.
std::optional<double> extract_duration(const RawHorizon& horizon, const AlignmentConfig& cfg);

struct BinMatch {
    int bin = 0;
    bool fuzzy_used = false;
    double relative_diff = 0.0;
};

// Nearest representative by relative distance (ties -> smallest index); falls
// back to exact interval membership when the best gap exceeds rho.
BinMatch fuzzy_bin(double days, const AlignmentConfig& cfg);

std::pair<CanonicalHorizonClass, AlignmentRecord> align(const RawHorizon& horizon,
                                                        const AlignmentConfig& cfg);

// Alignment extended to already-canonical classes, on which it is the
// identity; raw horizons go through align().
using HorizonOrClass = std::variant<RawHorizon, CanonicalHorizonClass>;
CanonicalHorizonClass extended_align(const HorizonOrClass& horizon, const AlignmentConfig& cfg);

// Deterministic token for a raw horizon, e.g. "12-month", "interval-8-week",
// "tte-mace-2.3-year", "missing". Used when alignment is bypassed.
std::string raw_horizon_token(const RawHorizon& horizon);

} // namespace evatlas
