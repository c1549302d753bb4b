#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hqe/io.hpp"
#include "hqe/transforms.hpp"

namespace hqe::cli {

// Bad flag values found after parsing; reported like parse errors (exit 2).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunContext {
    std::uint64_t seed = 1;
    PlancherelWeight weight;
    double nevo_n = 2.0;
    std::string presets_path;
};

struct CommandResult {
    nlohmann::json results = nlohmann::json::object();
    std::vector<std::pair<std::string, CsvTable>> tables;
    std::vector<std::string> failures;  // names of assertions that did not hold

    void check(const std::string& name, bool ok) {
        if (!ok) failures.push_back(name);
    }
};

class Command {
public:
    virtual ~Command() = default;
    virtual std::string name() const = 0;
    virtual std::string description() const = 0;
    virtual void add_options(CLI::App& sub) = 0;
    virtual nlohmann::json parameters() const = 0;
    virtual CommandResult run(const RunContext& ctx) = 0;
};

std::vector<std::unique_ptr<Command>> make_commands();

Interval parse_interval(const std::string& text);

}  // namespace hqe::cli
