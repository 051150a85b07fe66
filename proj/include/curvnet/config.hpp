#pragma once

#include <fstream>
#include <map>
#include <sstream>

#include "curvnet/surface.hpp"

namespace curvnet {

// Flat key = value text files. '#' starts a comment, blank lines ignored,
// later keys override earlier ones. Values are decimal floats, integers,
// words, or space-separated lists.
class KeyValueConfig {
  public:
    static KeyValueConfig parse(std::istream& in) {
        KeyValueConfig cfg;
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            auto eq = line.find('=');
            if (eq == std::string::npos) {
                if (line.find_first_not_of(" \t\r") != std::string::npos)
                    throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
                continue;
            }
            std::string key = trim(line.substr(0, eq));
            std::string value = trim(line.substr(eq + 1));
            if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
            cfg.values_[key] = value;
        }
        return cfg;
    }

    static KeyValueConfig parse_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw IoError("cannot open config file: " + path);
        return parse(in);
    }

    static KeyValueConfig parse_string(const std::string& text) {
        std::istringstream in(text);
        return parse(in);
    }

    bool has(const std::string& key) const { return values_.count(key) != 0; }

    std::string get_string(const std::string& key) const {
        auto it = values_.find(key);
        if (it == values_.end()) throw ConfigError("missing config key: " + key);
        return it->second;
    }

    std::string get_string(const std::string& key, const std::string& fallback) const {
        auto it = values_.find(key);
        return it == values_.end() ? fallback : it->second;
    }

    double get_double(const std::string& key) const { return to_double(key, get_string(key)); }

    double get_double(const std::string& key, double fallback) const {
        return has(key) ? get_double(key) : fallback;
    }

    int get_int(const std::string& key) const {
        double d = get_double(key);
        int i = static_cast<int>(std::llround(d));
        if (std::abs(d - i) > 1e-9) throw ConfigError("config key is not an integer: " + key);
        return i;
    }

    int get_int(const std::string& key, int fallback) const {
        return has(key) ? get_int(key) : fallback;
    }

    std::vector<int> get_int_list(const std::string& key) const {
        std::istringstream in(get_string(key));
        std::vector<int> out;
        double d;
        while (in >> d) out.push_back(static_cast<int>(std::llround(d)));
        if (out.empty()) throw ConfigError("empty list for config key: " + key);
        return out;
    }

    void set(const std::string& key, const std::string& value) { values_[key] = value; }

    const std::map<std::string, std::string>& entries() const { return values_; }

  private:
    static std::string trim(const std::string& s) {
        auto b = s.find_first_not_of(" \t\r");
        if (b == std::string::npos) return "";
        auto e = s.find_last_not_of(" \t\r");
        return s.substr(b, e - b + 1);
    }

    static double to_double(const std::string& key, const std::string& v) {
        try {
            size_t pos = 0;
            double d = std::stod(v, &pos);
            if (pos != v.size()) throw std::invalid_argument(v);
            return d;
        } catch (const std::exception&) {
            throw ConfigError("config key '" + key + "' is not a number: " + v);
        }
    }

    std::map<std::string, std::string> values_;
};

// Surface description keys (see README for the full table):
//   kind = sphere | plane | cylinder | revolution | torus | ellipsoid_rev |
//          triaxial | monge | monge_lemon | monge_star | monge_monstar
inline SurfaceChart surface_from_config(const KeyValueConfig& cfg) {
    std::string kind = cfg.get_string("kind");
    if (kind == "sphere")
        return SurfaceChart::sphere(cfg.get_double("radius"), cfg.get_double("lat_band", 1.2));
    if (kind == "plane") return SurfaceChart::plane(cfg.get_double("half_extent", 1.0));
    if (kind == "cylinder")
        return SurfaceChart::cylinder(cfg.get_double("radius"), cfg.get_double("height"));
    if (kind == "torus")
        return SurfaceChart::torus(cfg.get_double("major_radius"), cfg.get_double("minor_radius"));
    if (kind == "ellipsoid_rev")
        return SurfaceChart::ellipsoid_of_revolution(cfg.get_double("equator_radius"),
                                                     cfg.get_double("polar_radius"),
                                                     cfg.get_double("lat_band", 1.2));
    if (kind == "revolution")
        return SurfaceChart::revolution(cfg.get_double("profile_offset"),
                                        cfg.get_double("profile_cos"), cfg.get_double("profile_sin"),
                                        cfg.get_double("v_min"), cfg.get_double("v_max"),
                                        cfg.get_int("v_periodic", 0) != 0);
    if (kind == "triaxial")
        return SurfaceChart::triaxial_ellipsoid(cfg.get_double("a"), cfg.get_double("b"),
                                                cfg.get_double("c"),
                                                cfg.get_double("lat_band", 1.2));
    if (kind == "monge") {
        std::array<double, 4> cubic{cfg.get_double("c30", 0.0), cfg.get_double("c21", 0.0),
                                    cfg.get_double("c12", 0.0), cfg.get_double("c03", 0.0)};
        return SurfaceChart::monge(cfg.get_double("kxx"), cfg.get_double("kxy", 0.0),
                                   cfg.get_double("kyy"), cubic, cfg.get_double("half_extent"));
    }
    // Model umbilic patches: z = (kappa/2)(x^2+y^2) + sigma (x^3 + T x y^2).
    // In the harmonic split x^3 + T x y^2 = Re(P z^3) + |z|^2 Re(Q z) with
    // P = (1-T)/4 and Q = (3+T)/4, the singularity is a star iff 3|P| > |Q|
    // and has one radial family-1 ray for T in (0,1), three for T in (1.5,3).
    auto umbilic_patch = [&](double T) {
        double kappa = cfg.get_double("kappa", 0.5);
        double sigma = cfg.get_double("sigma", 0.15);
        double he = cfg.get_double("half_extent", 0.6);
        return SurfaceChart::monge(kappa, 0.0, kappa, {sigma, 0.0, sigma * T, 0.0}, he);
    };
    if (kind == "monge_lemon") return umbilic_patch(0.25);
    if (kind == "monge_monstar") return umbilic_patch(2.0);
    if (kind == "monge_star") return umbilic_patch(-3.0);
    throw ConfigError("unknown surface kind: " + kind);
}

enum class UmbilicPattern { Lemon, Star, Monstar };

inline const char* pattern_name(UmbilicPattern p) {
    switch (p) {
        case UmbilicPattern::Lemon: return "lemon";
        case UmbilicPattern::Star: return "star";
        case UmbilicPattern::Monstar: return "monstar";
    }
    return "?";
}

inline UmbilicPattern pattern_from_string(const std::string& s) {
    if (s == "lemon") return UmbilicPattern::Lemon;
    if (s == "star") return UmbilicPattern::Star;
    if (s == "monstar") return UmbilicPattern::Monstar;
    throw ConfigError("unknown umbilic pattern: " + s);
}

inline SurfaceChart umbilic_model_chart(UmbilicPattern p, double kappa = 0.5, double sigma = 0.15,
                                        double half_extent = 0.6) {
    double T = p == UmbilicPattern::Lemon ? 0.25 : (p == UmbilicPattern::Monstar ? 2.0 : -3.0);
    return SurfaceChart::monge(kappa, 0.0, kappa, {sigma, 0.0, sigma * T, 0.0}, half_extent);
}

}  // namespace curvnet
