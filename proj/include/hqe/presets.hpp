#pragma once

#include <string>
#include <vector>

#include "hqe/observables.hpp"

namespace hqe {

// Entry of the observable preset file:
// [{name, variant, parameters{...}, declared_constants{C, S, k}}, ...]
struct ObservablePreset {
    std::string name;
    std::string variant;  // multiplication | finite_range | differential
    std::string parameters_json;
    LocalityConstants declared;
    Observable observable;  // built from the parameters, carrying the declared constants
};

// FormatError on unknown variants, profiles or missing fields.
std::vector<ObservablePreset> parse_presets(const std::string& text);
std::vector<ObservablePreset> load_presets(const std::string& path);
const ObservablePreset& find_preset(const std::vector<ObservablePreset>& presets, const std::string& name);

}  // namespace hqe
