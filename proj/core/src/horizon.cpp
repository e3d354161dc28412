#include "evatlas/horizon.hpp"

#include "evatlas/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace evatlas {

std::string_view to_string(HorizonSem v) {
    switch (v) {
        case HorizonSem::Acute: return "acute";
        case HorizonSem::Fixed: return "fixed";
        case HorizonSem::Tte: return "tte";
        case HorizonSem::Unknown: return "unknown";
    }
    return "?";
}

std::optional<HorizonSem> parse_horizon_sem(std::string_view token) {
    if (token == "acute") return HorizonSem::Acute;
    if (token == "fixed") return HorizonSem::Fixed;
    if (token == "tte") return HorizonSem::Tte;
    if (token == "unknown") return HorizonSem::Unknown;
    return std::nullopt;
}

std::string CanonicalHorizonClass::encode() const {
    std::string out(to_string(h_sem));
    out.push_back(':');
    if (h_bin)
        out += std::to_string(*h_bin);
    else
        out.push_back('-');
    return out;
}

std::optional<CanonicalHorizonClass> CanonicalHorizonClass::decode(std::string_view text) {
    auto colon = text.find(':');
    if (colon == std::string_view::npos) return std::nullopt;
    auto sem = parse_horizon_sem(text.substr(0, colon));
    if (!sem) return std::nullopt;
    std::string_view bin = text.substr(colon + 1);
    CanonicalHorizonClass out{*sem, std::nullopt};
    if (bin == "-") return out;
    int value = 0;
    auto [ptr, ec] = std::from_chars(bin.data(), bin.data() + bin.size(), value);
    if (ec != std::errc{} || ptr != bin.data() + bin.size() || value < 1) return std::nullopt;
    out.h_bin = value;
    return out;
}

AlignmentConfig AlignmentConfig::defaults() {
    AlignmentConfig cfg;
    cfg.unit_to_days = {{"hour", 1.0 / 24.0}, {"day", 1.0},      {"week", 7.0},
                        {"month", 30.4375},   {"year", 365.25}};
    cfg.bin_upper_edges = {2.0, 14.0, 50.0, 130.0, 250.0, 550.0, 1200.0, 2700.0};
    cfg.representatives = {1.0,    7.0,    30.4375, 84.0,   182.625,
                           365.25, 730.5,  1826.25, 3652.5};
    cfg.rho = 0.1;
    cfg.delta_acute = 7.0;
    return cfg;
}

int AlignmentConfig::exact_bin(double days) const {
    for (std::size_t j = 0; j < bin_upper_edges.size(); ++j)
        if (days <= bin_upper_edges[j]) return static_cast<int>(j) + 1;
    return bin_count();  // open tail
}

void AlignmentConfig::validate() const {
    if (unit_to_days.empty())
        throw ConfigError("alignment: conversion table must enumerate at least one unit");
    for (const auto& [unit, days] : unit_to_days)
        if (unit.empty() || !(days > 0.0))
            throw ConfigError("alignment: unit '" + unit + "' must map to a positive day count");
    if (bin_upper_edges.empty())
        throw ConfigError("alignment: at least one bin edge is required");
    double prev = 0.0;
    for (double e : bin_upper_edges) {
        if (!(e > prev)) throw ConfigError("alignment: bin edges must be positive and ascending");
        prev = e;
    }
    if (static_cast<int>(representatives.size()) != bin_count())
        throw ConfigError("alignment: need exactly one representative per bin");
    for (std::size_t j = 0; j < representatives.size(); ++j) {
        double r = representatives[j];
        if (!(r > 0.0)) throw ConfigError("alignment: representatives must be positive");
        if (j > 0 && !(r > representatives[j - 1]))
            throw ConfigError("alignment: representatives must be strictly increasing");
        double lo = j == 0 ? 0.0 : bin_upper_edges[j - 1];
        bool in_bin = j == 0 ? (r >= lo && r <= bin_upper_edges[0])
                             : (r > lo && (j >= bin_upper_edges.size() || r <= bin_upper_edges[j]));
        if (!in_bin) throw ConfigError("alignment: each representative must lie inside its bin");
    }
    if (!(rho >= 0.0 && rho < 1.0))
        throw ConfigError("alignment: rho must lie in [0, 1)");
    if (!(delta_acute > 0.0))
        throw ConfigError("alignment: delta_acute must be > 0");
}

namespace {

double convert(double value, const std::string& unit, const AlignmentConfig& cfg) {
    auto it = cfg.unit_to_days.find(unit);
    if (it == cfg.unit_to_days.end())
        throw UnknownUnitError("unknown time unit token '" + unit +
                               "': the conversion table must enumerate it");
    return value * it->second;
}

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

} // namespace

std::optional<double> extract_duration(const RawHorizon& horizon, const AlignmentConfig& cfg) {
    if (const auto* d = std::get_if<DurationHorizon>(&horizon))
        return convert(d->value, d->unit, cfg);
    if (const auto* iv = std::get_if<IntervalHorizon>(&horizon))
        return convert(iv->length_value, iv->length_unit, cfg);
    if (const auto* t = std::get_if<TteHorizon>(&horizon)) {
        if (t->followup) return convert(t->followup->value, t->followup->unit, cfg);
        return std::nullopt;
    }
    return std::nullopt;  // missing
}

BinMatch fuzzy_bin(double days, const AlignmentConfig& cfg) {
    int best = 0;
    double best_rel = 0.0;
    for (std::size_t j = 0; j < cfg.representatives.size(); ++j) {
        double rel = std::fabs(days - cfg.representatives[j]) / cfg.representatives[j];
        if (best == 0 || rel < best_rel) {  // strict < keeps the smallest index on ties
            best = static_cast<int>(j) + 1;
            best_rel = rel;
        }
    }
    if (best_rel <= cfg.rho) return {best, true, best_rel};

    int bin = cfg.exact_bin(days);
    double rep = cfg.representatives[static_cast<std::size_t>(bin) - 1];
    return {bin, false, std::fabs(days - rep) / rep};
}

std::pair<CanonicalHorizonClass, AlignmentRecord> align(const RawHorizon& horizon,
                                                        const AlignmentConfig& cfg) {
    AlignmentRecord record;
    record.raw_horizon = horizon;

    auto days = extract_duration(horizon, cfg);
    record.extracted_days = days;

    const bool is_tte = std::holds_alternative<TteHorizon>(horizon);
    if (!days) {
        if (is_tte) return {CanonicalHorizonClass{HorizonSem::Tte, std::nullopt}, record};
        return {CanonicalHorizonClass{HorizonSem::Unknown, std::nullopt}, record};
    }

    BinMatch match = fuzzy_bin(*days, cfg);
    record.fuzzy_used = match.fuzzy_used;
    record.matched_bin = match.bin;
    record.relative_diff = match.relative_diff;

    HorizonSem sem = is_tte          ? HorizonSem::Tte
                     : *days <= cfg.delta_acute ? HorizonSem::Acute
                                                : HorizonSem::Fixed;
    return {CanonicalHorizonClass{sem, match.bin}, record};
}

CanonicalHorizonClass extended_align(const HorizonOrClass& horizon, const AlignmentConfig& cfg) {
    if (const auto* cls = std::get_if<CanonicalHorizonClass>(&horizon)) return *cls;
    return align(std::get<RawHorizon>(horizon), cfg).first;
}

std::string raw_horizon_token(const RawHorizon& horizon) {
    if (const auto* d = std::get_if<DurationHorizon>(&horizon))
        return format_number(d->value) + "-" + normalize_token(d->unit);
    if (const auto* iv = std::get_if<IntervalHorizon>(&horizon))
        return "interval-" + format_number(iv->length_value) + "-" +
               normalize_token(iv->length_unit);
    if (const auto* t = std::get_if<TteHorizon>(&horizon)) {
        std::string out = "tte-" + normalize_token(t->event);
        if (t->followup)
            out += "-" + format_number(t->followup->value) + "-" +
                   normalize_token(t->followup->unit);
        return out;
    }
    return "missing";
}

} // namespace evatlas
