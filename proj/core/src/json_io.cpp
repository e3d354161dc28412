#include "evatlas/json_io.hpp"

#include "evatlas/errors.hpp"
#include "serde.hpp"

#include <fstream>
#include <sstream>

namespace evatlas {

using serde::json;

namespace {

json parse_or_throw(std::string_view text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string(what) + ": JSON syntax error at byte " +
                         std::to_string(e.byte) + ": " + e.what());
    }
}

std::string read_file(const std::filesystem::path& path, const char* what) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(std::string("cannot open ") + what + ": " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

} // namespace

std::string atlas_to_json(const Atlas& atlas) {
    return serde::atlas_to_json_obj(atlas).dump(2) + "\n";
}

Atlas atlas_from_json(std::string_view text) {
    return serde::atlas_from_json_obj(parse_or_throw(text, "atlas"));
}

std::string build_config_to_json(const BuildConfig& config) {
    return serde::build_config_to_json_obj(config).dump(2) + "\n";
}

BuildConfig build_config_from_json(std::string_view text) {
    return serde::build_config_from_json_obj(parse_or_throw(text, "build config"));
}

std::string answer_to_json(const AnswerObject& answer) {
    return serde::answer_to_json_obj(answer).dump(2) + "\n";
}

std::string mediation_to_json(const MediationAnswer& answer) {
    json j;
    j["total"] = serde::answer_to_json_obj(answer.total);
    j["direct"] = serde::answer_to_json_obj(answer.direct);
    j["indirect"] = serde::answer_to_json_obj(answer.indirect);
    return j.dump(2) + "\n";
}

std::string trajectory_to_json(const std::vector<TrajectoryPoint>& points) {
    json j = json::array();
    for (const auto& point : points) {
        json p;
        p["tau"] = point.tau.encode();
        p["answer"] = serde::answer_to_json_obj(point.answer);
        j.push_back(std::move(p));
    }
    return j.dump(2) + "\n";
}

void save_atlas(const Atlas& atlas, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ParseError("cannot open atlas output: " + path.string());
    out << atlas_to_json(atlas);
}

Atlas load_atlas(const std::filesystem::path& path) {
    return atlas_from_json(read_file(path, "atlas file"));
}

BuildConfig load_build_config(const std::filesystem::path& path) {
    return build_config_from_json(read_file(path, "build config file"));
}

} // namespace evatlas
