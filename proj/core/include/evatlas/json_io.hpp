#pragma once

#include "evatlas/atlas.hpp"
#include "evatlas/config.hpp"
#include "evatlas/query.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace evatlas {

// String-level serialization boundary. Atlas and build-config documents
// round-trip; answers serialize one way (they are derived artifacts).
std::string atlas_to_json(const Atlas& atlas);
Atlas atlas_from_json(std::string_view text);

std::string build_config_to_json(const BuildConfig& config);
BuildConfig build_config_from_json(std::string_view text);

std::string answer_to_json(const AnswerObject& answer);
std::string mediation_to_json(const MediationAnswer& answer);
std::string trajectory_to_json(const std::vector<TrajectoryPoint>& points);

void save_atlas(const Atlas& atlas, const std::filesystem::path& path);
Atlas load_atlas(const std::filesystem::path& path);
BuildConfig load_build_config(const std::filesystem::path& path);

} // namespace evatlas
