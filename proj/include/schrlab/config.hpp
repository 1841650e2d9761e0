#pragma once

#include "schrlab/common.hpp"

namespace lab {

struct RunConfig {
    int n = 2;
    double sigma = 0.2;
    double s = 0.15;
    std::vector<int64_t> m_list{12, 16, 20, 24};
    uint64_t seed = 1;
    int64_t quotient_samples = 10000;
    int witness_count = 48;
    int lower_bound_samples = 200;
    std::string eps_tier = "empirical";  // "rigorous" | "empirical"
    std::string out_dir = "out";
    std::string profile_cache;

    void validate() const;  // throws Error on bad fields
    std::string to_json() const;
    static RunConfig from_json_text(const std::string& text);
    static RunConfig from_toml_text(const std::string& text);
    static RunConfig from_file(const std::string& path);  // by extension
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace lab
