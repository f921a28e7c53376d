#ifndef ASCAL_CONFIG_HPP
#define ASCAL_CONFIG_HPP

#include "ascal/dynamics.hpp"

#include <map>
#include <string>

namespace ascal {

struct OutputOptions {
    std::string csv_path;
    std::string json_path;
    bool plot = false;
    std::string expect = "horizon";  // horizon | blowup | overflow
};

// Flat dotted-key configuration. Keys mirror the run-record field paths; a
// config file is `key = value` lines, '#' comments, UTF-8.
struct RunConfig {
    std::map<std::string, std::string> kv;

    static RunConfig from_file(const std::string& path);
    static RunConfig from_text(const std::string& text);
    // pks_blowup | sqg_random | aggregation_random | event_bench | region_scan
    static RunConfig preset(const std::string& name);

    bool has(const std::string& key) const { return kv.count(key) > 0; }
    void set(const std::string& key, const std::string& value) { kv[key] = value; }

    std::string get_string(const std::string& key, const std::string& fallback) const;
    std::string require_string(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;

    SimulationSetup setup() const;
    OutputOptions output() const;

    // sorted key=value lines; embedded in every JSON summary
    std::string canonical_text() const;
};

std::vector<NormRequest> parse_norm_list(const std::string& text);

}  // namespace ascal

#endif
