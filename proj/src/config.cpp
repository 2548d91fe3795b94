#include "proxsamp/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace proxsamp {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

Vec to_vec(const std::vector<double>& v) {
    Vec out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[i];
    return out;
}

}  // namespace

KeyValueConfig KeyValueConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return from_string(buffer.str());
}

KeyValueConfig KeyValueConfig::from_string(const std::string& text) {
    KeyValueConfig cfg;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config: line " + std::to_string(line_no) +
                                     " is not 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw std::runtime_error("config: empty key on line " + std::to_string(line_no));
        if (cfg.values_.count(key))
            throw std::runtime_error("config: duplicate key '" + key + "'");
        cfg.values_[key] = value;
        cfg.consumed_[key] = false;
    }
    return cfg;
}

bool KeyValueConfig::has(const std::string& key) const { return values_.count(key) > 0; }

std::string KeyValueConfig::raw(const std::string& key) {
    const auto it = values_.find(key);
    if (it == values_.end())
        throw std::runtime_error("config: missing required key '" + key + "'");
    consumed_[key] = true;
    return it->second;
}

std::string KeyValueConfig::get_string(const std::string& key) { return raw(key); }

std::string KeyValueConfig::get_string_or(const std::string& key,
                                          const std::string& fallback) {
    return has(key) ? raw(key) : fallback;
}

double KeyValueConfig::get_double(const std::string& key) {
    const std::string v = raw(key);
    std::size_t pos = 0;
    const double out = std::stod(v, &pos);
    if (pos != v.size())
        throw std::runtime_error("config: key '" + key + "' is not a number");
    return out;
}

double KeyValueConfig::get_double_or(const std::string& key, double fallback) {
    return has(key) ? get_double(key) : fallback;
}

std::uint64_t KeyValueConfig::get_u64(const std::string& key) {
    const std::string v = raw(key);
    std::size_t pos = 0;
    const unsigned long long out = std::stoull(v, &pos);
    if (pos != v.size())
        throw std::runtime_error("config: key '" + key + "' is not an integer");
    return out;
}

std::uint64_t KeyValueConfig::get_u64_or(const std::string& key, std::uint64_t fallback) {
    return has(key) ? get_u64(key) : fallback;
}

bool KeyValueConfig::get_bool_or(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const std::string v = raw(key);
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw std::runtime_error("config: key '" + key + "' is not a boolean");
}

std::vector<double> KeyValueConfig::get_vector(const std::string& key) {
    std::istringstream in(raw(key));
    std::vector<double> out;
    double x;
    while (in >> x) out.push_back(x);
    if (!in.eof())
        throw std::runtime_error("config: key '" + key + "' is not a numeric vector");
    if (out.empty())
        throw std::runtime_error("config: key '" + key + "' is empty");
    return out;
}

std::vector<std::string> KeyValueConfig::unconsumed() const {
    std::vector<std::string> keys;
    for (const auto& [key, used] : consumed_)
        if (!used) keys.push_back(key);
    return keys;
}

std::unique_ptr<StandardBody> make_body(KeyValueConfig& cfg, const std::string& prefix) {
    const std::string kind = cfg.get_string(prefix + "kind");
    Vec translation;
    if (cfg.has(prefix + "translation"))
        translation = to_vec(cfg.get_vector(prefix + "translation"));

    if (kind == "ball") {
        const int dim = static_cast<int>(cfg.get_u64(prefix + "dim"));
        const double radius = cfg.get_double(prefix + "radius");
        return std::make_unique<StandardBody>(
            StandardBody::ball(dim, radius, translation));
    }
    if (kind == "box") {
        Vec hw = to_vec(cfg.get_vector(prefix + "halfwidths"));
        return std::make_unique<StandardBody>(
            StandardBody::box(std::move(hw), translation));
    }
    if (kind == "interval") {
        return std::make_unique<StandardBody>(StandardBody::interval(
            cfg.get_double(prefix + "lo"), cfg.get_double(prefix + "hi")));
    }
    if (kind == "polytope") {
        const std::vector<double> a_flat = cfg.get_vector(prefix + "a");
        const std::vector<double> b_flat = cfg.get_vector(prefix + "b");
        const std::size_t rows = b_flat.size();
        if (rows == 0 || a_flat.size() % rows != 0)
            throw std::runtime_error("config: polytope A is not row-major with |b| rows");
        const std::size_t cols = a_flat.size() / rows;
        Mat a(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                    a_flat[i * cols + j];
        return std::make_unique<StandardBody>(
            StandardBody::polytope(std::move(a), to_vec(b_flat), translation));
    }
    if (kind == "ellipsoid") {
        const std::vector<double> q_flat = cfg.get_vector(prefix + "q");
        const auto dim = static_cast<std::size_t>(std::lround(std::sqrt(
            static_cast<double>(q_flat.size()))));
        if (dim * dim != q_flat.size())
            throw std::runtime_error("config: ellipsoid Q is not square row-major");
        Mat q(dim, dim);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j)
                q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                    q_flat[i * dim + j];
        const double radius = cfg.get_double(prefix + "radius");
        return std::make_unique<StandardBody>(
            StandardBody::ellipsoid(std::move(q), radius, translation));
    }
    throw std::runtime_error("config: unknown body kind '" + kind + "'");
}

std::unique_ptr<PotentialOracle> make_potential(KeyValueConfig& cfg,
                                                const std::string& prefix) {
    const std::string kind = cfg.get_string(prefix + "kind");
    if (kind == "quadratic" || kind == "norm") {
        const int dim = static_cast<int>(cfg.get_u64(prefix + "dim"));
        Vec center;
        if (cfg.has(prefix + "center")) center = to_vec(cfg.get_vector(prefix + "center"));
        if (kind == "quadratic")
            return std::make_unique<QuadraticPotential>(dim, center);
        return std::make_unique<NormPotential>(dim, center);
    }
    if (kind == "indicator-interval") {
        return std::make_unique<IndicatorIntervalPotential>(
            cfg.get_double(prefix + "lo"), cfg.get_double(prefix + "hi"));
    }
    throw std::runtime_error("config: unknown potential kind '" + kind + "'");
}

}  // namespace proxsamp
