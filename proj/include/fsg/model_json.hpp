#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fsg/kripke.hpp"

namespace fsg {

// {"worlds": [...], "edges": [[a,b],...], "valuation": {"p": [...]}, "point": w}
inline PointedModel pointed_from_json(const nlohmann::json& j) {
    try {
        require(j.is_object(), "model must be a JSON object");
        require(j.contains("worlds"), "model is missing \"worlds\"");
        auto worlds = j.at("worlds").get<std::vector<std::string>>();
        std::vector<KripkeModel::Edge> edges;
        if (j.contains("edges"))
            for (const auto& e : j.at("edges")) {
                require(e.is_array() && e.size() == 2, "edge must be a pair");
                edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
            }
        std::map<std::string, std::vector<std::string>> val;
        if (j.contains("valuation")) val = j.at("valuation").get<std::map<std::string, std::vector<std::string>>>();
        auto m = KripkeModel::make(std::move(worlds), edges, val);
        std::string point = j.contains("point") ? j.at("point").get<std::string>() : m->name(0);
        return PointedModel(m, point);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("bad model JSON: ") + e.what());
    }
}

inline nlohmann::json pointed_to_json(const PointedModel& pm) {
    nlohmann::json j;
    j["worlds"] = pm.model->names();
    auto edges = nlohmann::json::array();
    for (const auto& [a, b] : pm.model->edges()) edges.push_back({a, b});
    j["edges"] = edges;
    j["valuation"] = pm.model->valuation();
    j["point"] = pm.name();
    return j;
}

inline nlohmann::json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    require(in.good(), "cannot open " + path.string());
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

inline PointedModel load_pointed(const std::filesystem::path& path) {
    return pointed_from_json(read_json_file(path));
}

// A path is either a model file or a directory of *.json model files (sorted by name).
inline std::vector<PointedModel> load_models(const std::vector<std::string>& paths) {
    std::vector<PointedModel> out;
    for (const auto& p : paths) {
        std::filesystem::path path(p);
        if (std::filesystem::is_directory(path)) {
            std::vector<std::filesystem::path> files;
            for (const auto& e : std::filesystem::directory_iterator(path))
                if (e.path().extension() == ".json") files.push_back(e.path());
            std::sort(files.begin(), files.end());
            for (const auto& f : files) out.push_back(load_pointed(f));
        } else {
            out.push_back(load_pointed(path));
        }
    }
    return out;
}

}  // namespace fsg
