#include <cmath>

#include "report.hpp"
#include "subspace/io.hpp"

namespace subspace::cli {

Json number(double v) {
    if (std::isnan(v)) return nullptr;
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

Json numbers(std::span<const double> values) {
    Json arr = Json::array();
    for (double v : values) arr.push_back(number(v));
    return arr;
}

Json profile_json(const signal::EgvProfile& profile) {
    return Json{{"gaps", numbers(profile.gaps)},
                {"singular_energies", numbers(profile.singular_energies)},
                {"variations", numbers(profile.variations)},
                {"gamma", number(profile.gamma)}};
}

Json cutoff_json(const signal::CutoffResult& cut) {
    Json j;
    j["method"] = std::string(signal::cutoff_method_name(cut.method));
    j["m"] = cut.m;
    j["f"] = cut.f ? Json(*cut.f) : Json(nullptr);
    j["peak_m"] = number(cut.peak_m);
    j["peak_f"] = cut.peak_f ? number(*cut.peak_f) : Json(nullptr);
    j["infinite_count"] = cut.infinite_count;
    j["warnings"] = cut.warnings;
    return j;
}

Json RunReport::to_json() const {
    Json j;
    j["schema_version"] = schema_version;
    j["command"] = command;
    j["inputs"] = inputs;
    j["parameters"] = parameters;
    j["results"] = results;
    j["work_counters"] = work_counters;
    j["outputs"] = outputs;
    j["wall_time_ms"] = wall_ms;
    return j;
}

void write_json(const std::filesystem::path& path, const Json& doc) { io::write_file(path, doc.dump(2) + "\n"); }

}  // namespace subspace::cli
