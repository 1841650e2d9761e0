#include "schrlab/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace lab {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ERR_IO, "cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ERR_IO, "cannot write file: " + path);
    out << content;
    if (!out) throw Error(ERR_IO, "write failed: " + path);
}

void RunConfig::validate() const {
    if (n != 2 && n != 3) throw Error(ERR_INVALID_ARG, "config: n must be 2 or 3");
    if (!(sigma > 0 && sigma < 0.5)) throw Error(ERR_INVALID_ARG, "config: sigma in (0, 1/2)");
    if (!(s >= 0)) throw Error(ERR_INVALID_ARG, "config: s must be >= 0");
    if (m_list.empty()) throw Error(ERR_INVALID_ARG, "config: m_list empty");
    for (int64_t m : m_list)
        if (m < 2) throw Error(ERR_INVALID_ARG, "config: every m must be >= 2");
    if (quotient_samples < 100) throw Error(ERR_INVALID_ARG, "config: quotient_samples too small");
    if (witness_count < 1) throw Error(ERR_INVALID_ARG, "config: witness_count must be >= 1");
    if (lower_bound_samples < 1) throw Error(ERR_INVALID_ARG, "config: lower_bound_samples must be >= 1");
    if (eps_tier != "rigorous" && eps_tier != "empirical")
        throw Error(ERR_INVALID_ARG, "config: eps_tier must be rigorous|empirical");
    if (out_dir.empty()) throw Error(ERR_INVALID_ARG, "config: out_dir empty");
}

std::string RunConfig::to_json() const {
    nlohmann::json j;
    j["n"] = n;
    j["sigma"] = sigma;
    j["s"] = s;
    j["m_list"] = m_list;
    j["seed"] = seed;
    j["quotient_samples"] = quotient_samples;
    j["witness_count"] = witness_count;
    j["lower_bound_samples"] = lower_bound_samples;
    j["eps_tier"] = eps_tier;
    j["out_dir"] = out_dir;
    j["profile_cache"] = profile_cache;
    return j.dump(2);
}

RunConfig RunConfig::from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw Error(ERR_INVALID_ARG, std::string("config JSON parse error: ") + e.what());
    }
    RunConfig c;
    auto get = [&](const char* key, auto& dst) {
        if (j.contains(key)) dst = j.at(key).get<std::decay_t<decltype(dst)>>();
    };
    get("n", c.n);
    get("sigma", c.sigma);
    get("s", c.s);
    get("m_list", c.m_list);
    get("seed", c.seed);
    get("quotient_samples", c.quotient_samples);
    get("witness_count", c.witness_count);
    get("lower_bound_samples", c.lower_bound_samples);
    get("eps_tier", c.eps_tier);
    get("out_dir", c.out_dir);
    get("profile_cache", c.profile_cache);
    c.validate();
    return c;
}

namespace {

// flat TOML subset: key = value with strings, numbers, booleans and
// one-line arrays; # comments
std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

nlohmann::json toml_value(const std::string& raw) {
    std::string v = strip(raw);
    if (v.empty()) throw Error(ERR_INVALID_ARG, "config TOML: empty value");
    if (v.front() == '"') {
        if (v.size() < 2 || v.back() != '"')
            throw Error(ERR_INVALID_ARG, "config TOML: unterminated string");
        return v.substr(1, v.size() - 2);
    }
    if (v.front() == '[') {
        if (v.back() != ']') throw Error(ERR_INVALID_ARG, "config TOML: unterminated array");
        nlohmann::json arr = nlohmann::json::array();
        std::string body = v.substr(1, v.size() - 2);
        std::stringstream ss(body);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = strip(item);
            if (!item.empty()) arr.push_back(toml_value(item));
        }
        return arr;
    }
    if (v == "true") return true;
    if (v == "false") return false;
    try {
        size_t pos = 0;
        if (v.find('.') == std::string::npos && v.find('e') == std::string::npos &&
            v.find('E') == std::string::npos) {
            long long i = std::stoll(v, &pos);
            if (pos == v.size()) return i;
        }
        double d = std::stod(v, &pos);
        if (pos == v.size()) return d;
    } catch (...) {
    }
    throw Error(ERR_INVALID_ARG, "config TOML: cannot parse value: " + v);
}

}  // namespace

RunConfig RunConfig::from_toml_text(const std::string& text) {
    nlohmann::json j = nlohmann::json::object();
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        lineno++;
        // strip comments outside strings
        bool in_str = false;
        for (size_t i = 0; i < line.size(); i++) {
            if (line[i] == '"') in_str = !in_str;
            if (line[i] == '#' && !in_str) {
                line = line.substr(0, i);
                break;
            }
        }
        std::string t = strip(line);
        if (t.empty()) continue;
        size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw Error(ERR_INVALID_ARG,
                        "config TOML: expected key = value at line " + std::to_string(lineno));
        std::string key = strip(t.substr(0, eq));
        if (key.empty()) throw Error(ERR_INVALID_ARG, "config TOML: empty key");
        j[key] = toml_value(t.substr(eq + 1));
    }
    return from_json_text(j.dump());
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::string text = read_file(path);
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json")
        return from_json_text(text);
    return from_toml_text(text);
}

}  // namespace lab
