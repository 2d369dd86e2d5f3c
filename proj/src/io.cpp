#include "pathwave/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

namespace pathwave {

StrictObject::StrictObject(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_ + ": expected an object");
}

bool StrictObject::has(const std::string& key) const { return j_.contains(key); }

const json& StrictObject::require(const std::string& key) {
    if (!j_.contains(key)) throw ConfigError(path_ + ": missing required key '" + key + "'");
    seen_.push_back(key);
    return j_.at(key);
}

const json* StrictObject::optional(const std::string& key) {
    if (!j_.contains(key)) return nullptr;
    seen_.push_back(key);
    return &j_.at(key);
}

namespace {

double as_number(const json& v, const std::string& where) {
    if (!v.is_number()) throw ConfigError(where + ": expected a number");
    return v.get<double>();
}

} // namespace

double StrictObject::number(const std::string& key) {
    return as_number(require(key), path_ + "/" + key);
}

double StrictObject::number_or(const std::string& key, double fallback) {
    const json* v = optional(key);
    return v ? as_number(*v, path_ + "/" + key) : fallback;
}

std::int64_t StrictObject::integer(const std::string& key) {
    const json& v = require(key);
    if (!v.is_number_integer()) throw ConfigError(path_ + "/" + key + ": expected an integer");
    return v.get<std::int64_t>();
}

std::int64_t StrictObject::integer_or(const std::string& key, std::int64_t fallback) {
    const json* v = optional(key);
    if (!v) return fallback;
    if (!v->is_number_integer()) throw ConfigError(path_ + "/" + key + ": expected an integer");
    return v->get<std::int64_t>();
}

bool StrictObject::boolean_or(const std::string& key, bool fallback) {
    const json* v = optional(key);
    if (!v) return fallback;
    if (!v->is_boolean()) throw ConfigError(path_ + "/" + key + ": expected a boolean");
    return v->get<bool>();
}

std::string StrictObject::text(const std::string& key) {
    const json& v = require(key);
    if (!v.is_string()) throw ConfigError(path_ + "/" + key + ": expected a string");
    return v.get<std::string>();
}

std::string StrictObject::text_or(const std::string& key, const std::string& fallback) {
    const json* v = optional(key);
    if (!v) return fallback;
    if (!v->is_string()) throw ConfigError(path_ + "/" + key + ": expected a string");
    return v->get<std::string>();
}

void StrictObject::finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
        if (std::find(seen_.begin(), seen_.end(), it.key()) == seen_.end())
            throw ConfigError(path_ + ": unknown key '" + it.key() + "'");
    }
}

namespace {

EdgeParams edge_from_json(const json& j, const std::string& path) {
    StrictObject o(j, path);
    EdgeParams p;
    p.alpha = o.number("alpha");
    p.beta = o.number("beta");
    p.phi = o.number_or("phi", 0.0);
    o.finish();
    try {
        p.validate();
    } catch (const DomainError& e) {
        throw ConfigError(path + ": " + e.what());
    }
    return p;
}

} // namespace

PathwaySpec pathway_from_json(const json& j, const std::string& path) {
    StrictObject o(j, path);
    PathwaySpec spec;

    const json* uniform = o.optional("uniform");
    const json* edges = o.optional("edges");
    if (!uniform && !edges)
        throw ConfigError(path + ": provide either 'edges' or 'uniform'");
    if (uniform && edges)
        throw ConfigError(path + ": 'edges' and 'uniform' are mutually exclusive");

    if (uniform) {
        const std::int64_t n = o.integer("n");
        if (n < 2) throw ConfigError(path + "/n: must be at least 2");
        spec.edges.assign(static_cast<std::size_t>(n),
                          edge_from_json(*uniform, path + "/uniform"));
    } else {
        if (!edges->is_array()) throw ConfigError(path + "/edges: expected an array");
        std::size_t idx = 0;
        for (const auto& e : *edges)
            spec.edges.push_back(
                edge_from_json(e, path + "/edges[" + std::to_string(idx++) + "]"));
        if (o.has("n")) {
            const std::int64_t n = o.integer("n");
            if (static_cast<std::size_t>(n) != spec.edges.size())
                throw ConfigError(path + "/n: does not match the number of edges");
        }
    }

    spec.boundary_input = o.number_or("x0", 1.0);
    if (const json* init = o.optional("initial")) {
        if (init->is_number()) {
            spec.uniform_initial = init->get<double>();
        } else if (init->is_array()) {
            spec.uniform_initial.reset();
            spec.initial_values = init->get<std::vector<double>>();
        } else {
            throw ConfigError(path + "/initial: expected a number or an array");
        }
    } else {
        spec.uniform_initial = -1.0;
    }
    o.finish();
    try {
        spec.validate();
    } catch (const DomainError& e) {
        throw ConfigError(path + ": " + e.what());
    }
    return spec;
}

json pathway_to_json(const PathwaySpec& spec) {
    json j;
    if (spec.is_uniform()) {
        j["n"] = spec.n();
        j["uniform"] = {{"alpha", spec.edges[0].alpha},
                        {"beta", spec.edges[0].beta},
                        {"phi", spec.edges[0].phi}};
    } else {
        json edges = json::array();
        for (const auto& e : spec.edges)
            edges.push_back({{"alpha", e.alpha}, {"beta", e.beta}, {"phi", e.phi}});
        j["edges"] = std::move(edges);
    }
    j["x0"] = spec.boundary_input;
    if (spec.uniform_initial)
        j["initial"] = *spec.uniform_initial;
    else
        j["initial"] = spec.initial_values;
    return j;
}

IntegratorConfig integrator_from_json(const json& j, const IntegratorConfig& defaults,
                                      const std::string& path) {
    StrictObject o(j, path);
    IntegratorConfig c = defaults;
    c.rel_tol = o.number_or("rel_tol", defaults.rel_tol);
    c.abs_tol = o.number_or("abs_tol", defaults.abs_tol);
    c.sample_dt = o.number_or("sample_dt", defaults.sample_dt);
    c.t_end = o.number_or("t_end", defaults.t_end);
    c.terminal_threshold = o.number_or("terminal_threshold", defaults.terminal_threshold);
    c.stop_on_arrival = o.boolean_or("stop_on_arrival", defaults.stop_on_arrival);
    o.finish();
    try {
        c.validate();
    } catch (const DomainError& e) {
        throw ConfigError(path + ": " + e.what());
    }
    return c;
}

json integrator_to_json(const IntegratorConfig& c) {
    return {{"rel_tol", c.rel_tol},
            {"abs_tol", c.abs_tol},
            {"sample_dt", c.sample_dt},
            {"t_end", c.t_end},
            {"terminal_threshold", c.terminal_threshold},
            {"stop_on_arrival", c.stop_on_arrival}};
}

std::string format_double(double v, int precision) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    return buf;
}

std::string Table::to_csv() const {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out += ',';
        out += header[i];
    }
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += format_double(row[i], precision);
        }
        out += '\n';
    }
    return out;
}

json Table::to_json_rows() const {
    json arr = json::array();
    for (const auto& row : rows) {
        json obj;
        for (std::size_t i = 0; i < row.size() && i < header.size(); ++i)
            obj[header[i]] = row[i];
        arr.push_back(std::move(obj));
    }
    return arr;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw ConfigError("failed writing " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::filesystem::path write_table(const std::filesystem::path& dir, const std::string& stem,
                                  const Table& table, const std::string& format) {
    if (format == "json") {
        const std::filesystem::path p = dir / (stem + ".json");
        write_file_atomic(p, table.to_json_rows().dump(2) + "\n");
        return p;
    }
    const std::filesystem::path p = dir / (stem + ".csv");
    write_file_atomic(p, table.to_csv());
    return p;
}

json load_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

} // namespace pathwave
