#include "hqe/presets.hpp"

#include "json.hpp"

#include "hqe/io.hpp"
#include "hqe/propagators.hpp"

namespace hqe {

namespace {

using nlohmann::json;

FuchsianGroup group_named(const std::string& name) {
    if (name == "bolza") return FuchsianGroup::bolza();
    throw FormatError("presets: unknown group '" + name + "'");
}

Observable build(const std::string& variant, const json& p) {
    const std::string profile = p.value("profile", p.value("operator", std::string()));
    if (variant == "multiplication") {
        if (profile == "constant") {
            const double c = p.at("value").get<double>();
            Observable A = multiplication_observable("constant", [c](const DiscPoint&) { return c; }, std::abs(c));
            A.multiplier_mean = c;
            return A;
        }
        if (profile == "orbit_bump")
            return orbit_bump_observable(group_named(p.value("group", std::string("bolza"))), p.at("radius").get<double>(),
                                         p.value("amplitude", 1.0), p.value("subtract_mean", true));
    } else if (variant == "finite_range") {
        if (profile == "smooth_ball")
            return radial_kernel_observable("smooth_ball",
                                            smooth_ball_kernel(p.at("t").get<double>(), p.at("sigma").get<double>()));
    } else if (variant == "differential") {
        if (profile == "minus_laplacian") return laplacian_observable();
    } else {
        throw FormatError("presets: unknown variant '" + variant + "'");
    }
    throw FormatError("presets: unknown profile '" + profile + "' for variant " + variant);
}

}  // namespace

std::vector<ObservablePreset> parse_presets(const std::string& text) {
    std::vector<ObservablePreset> out;
    try {
        const json doc = json::parse(text);
        if (!doc.is_array()) throw FormatError("presets: top level must be an array");
        for (const auto& entry : doc) {
            ObservablePreset p;
            p.name = entry.at("name").get<std::string>();
            p.variant = entry.at("variant").get<std::string>();
            const json& params = entry.at("parameters");
            p.parameters_json = params.dump();
            const json& dc = entry.at("declared_constants");
            p.declared = {dc.at("C").get<double>(), dc.at("S").get<double>(), dc.at("k").get<int>()};
            p.observable = build(p.variant, params);
            p.observable.name = p.name;
            p.observable.locality = p.declared;
            out.push_back(std::move(p));
        }
    } catch (const json::exception& e) {
        throw FormatError(std::string("presets: ") + e.what());
    }
    return out;
}

std::vector<ObservablePreset> load_presets(const std::string& path) { return parse_presets(read_file(path)); }

const ObservablePreset& find_preset(const std::vector<ObservablePreset>& presets, const std::string& name) {
    for (const auto& p : presets)
        if (p.name == name) return p;
    throw FormatError("presets: no preset named '" + name + "'");
}

}  // namespace hqe
