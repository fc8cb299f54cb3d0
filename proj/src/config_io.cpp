#include "qdot/config_io.hpp"

#include <cctype>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

#include "qdot/errors.hpp"

namespace qdot {

namespace {

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return s.substr(b, e - b);
}

} // namespace

PhysicalConfig parse_config_text(const std::string& text) {
    std::map<std::string, double> kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;

        std::string key, value;
        const size_t eq = line.find('=');
        if (eq != std::string::npos) {
            key = trim(line.substr(0, eq));
            value = trim(line.substr(eq + 1));
        } else {
            const size_t sp = line.find_first_of(" \t");
            if (sp == std::string::npos)
                throw config_error(lineno, "line " + std::to_string(lineno) +
                                               ": expected `key = value`");
            key = trim(line.substr(0, sp));
            value = trim(line.substr(sp + 1));
        }
        if (key.empty() || value.empty())
            throw config_error(lineno,
                               "line " + std::to_string(lineno) + ": empty key or value");

        char* end = nullptr;
        const double x = std::strtod(value.c_str(), &end);
        if (end == value.c_str() || *end != '\0')
            throw config_error(lineno, "line " + std::to_string(lineno) +
                                           ": cannot parse number `" + value + "`");
        if (!kv.emplace(key, x).second)
            throw config_error(lineno,
                               "line " + std::to_string(lineno) + ": duplicate key `" + key + "`");
    }

    auto need = [&](const char* key) {
        const auto it = kv.find(key);
        if (it == kv.end())
            throw config_error(0, std::string("missing required key `") + key + "`");
        return it->second;
    };

    PhysicalConfig cfg;
    cfg.material = MaterialSpec{need("m_star_ratio"), need("epsilon_r"), need("g_star")};
    cfg.trap = TrapSpec{need("hw_rho_mev"), need("hw_z_mev"), need("M"), std::nullopt};
    if (const auto it = kv.find("beta"); it != kv.end())
        cfg.trap.beta_override = it->second;

    static const char* known[] = {"m_star_ratio", "epsilon_r", "g_star",
                                  "hw_rho_mev",   "hw_z_mev",  "M",
                                  "beta"};
    for (const auto& [key, _] : kv) {
        bool ok = false;
        for (const char* k : known)
            ok = ok || key == k;
        if (!ok)
            throw config_error(0, "unknown key `" + key + "`");
    }
    return cfg;
}

PhysicalConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw config_error(0, "cannot open config file `" + path + "`");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

std::string fmt_g12(double x) {
    if (x == 0.0)
        x = 0.0; // normalize -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    if (std::strpbrk(buf, ".eEn") == nullptr)
        std::strcat(buf, ".0");
    return buf;
}

} // namespace qdot
