#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "subspace/signal.hpp"

namespace subspace::cli {

using Json = nlohmann::ordered_json;

inline constexpr int schema_version = 1;

/// Finite values as numbers, infinities as "inf" / "-inf", NaN as null.
Json number(double v);
Json numbers(std::span<const double> values);

Json profile_json(const signal::EgvProfile& profile);
Json cutoff_json(const signal::CutoffResult& cut);

struct RunReport {
    std::string command;
    Json inputs = Json::array();
    Json parameters = Json::object();
    Json results = Json::object();
    Json work_counters = Json::object();
    std::vector<std::string> outputs;
    double wall_ms = 0.0;

    Json to_json() const;
};

void write_json(const std::filesystem::path& path, const Json& doc);

}  // namespace subspace::cli
