#ifndef PATHWAVE_IO_HPP
#define PATHWAVE_IO_HPP

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pathwave/model.hpp"
#include "pathwave/ode.hpp"

namespace pathwave {

using json = nlohmann::json;

/// Strict-object view: every key must be consumed, unknown keys are
/// configuration errors.
class StrictObject {
public:
    StrictObject(const json& j, std::string path);
    ~StrictObject() = default;

    bool has(const std::string& key) const;
    const json& require(const std::string& key);
    const json* optional(const std::string& key);

    double number(const std::string& key);
    double number_or(const std::string& key, double fallback);
    std::int64_t integer(const std::string& key);
    std::int64_t integer_or(const std::string& key, std::int64_t fallback);
    bool boolean_or(const std::string& key, bool fallback);
    std::string text(const std::string& key);
    std::string text_or(const std::string& key, const std::string& fallback);

    /// Throws ConfigError if any key was never consumed.
    void finish() const;
    const std::string& path() const { return path_; }

private:
    const json& j_;
    std::string path_;
    std::vector<std::string> seen_;
};

PathwaySpec pathway_from_json(const json& j, const std::string& path = "/pathway");
json pathway_to_json(const PathwaySpec& spec);

IntegratorConfig integrator_from_json(const json& j, const IntegratorConfig& defaults,
                                      const std::string& path = "/integrator");
json integrator_to_json(const IntegratorConfig& c);

/// Format a double with the given number of significant digits (shortest
/// round-trip style via %g).
std::string format_double(double v, int precision);

/// Tabular output written as CSV or as a JSON array of row objects.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    int precision = 10;

    std::string to_csv() const;
    json to_json_rows() const;
};

/// Write-then-rename so files appear atomically.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// Write a table as <stem>.csv or <stem>.json according to `format`.
std::filesystem::path write_table(const std::filesystem::path& dir, const std::string& stem,
                                  const Table& table, const std::string& format);

json load_json_file(const std::filesystem::path& path);

} // namespace pathwave

#endif
