#include "wavetail/config.hpp"

#include <cctype>
#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace wavetail {
namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& name, int line,
                       const std::string& msg) {
    throw std::runtime_error(name + ":" + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& name, int line,
                    const std::string& tok) {
    const char* s = tok.c_str();
    char* end = nullptr;
    double v = std::strtod(s, &end);
    if (end == s || *end != '\0')
        fail(name, line, "expected a number, got '" + tok + "'");
    return v;
}

int parse_int(const std::string& name, int line, const std::string& tok) {
    const char* s = tok.c_str();
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (end == s || *end != '\0')
        fail(name, line, "expected an integer, got '" + tok + "'");
    return static_cast<int>(v);
}

std::vector<double> parse_list(const std::string& name, int line,
                               const std::string& value) {
    std::vector<double> out;
    std::string tok;
    std::istringstream in(value);
    while (in >> tok) {
        if (!tok.empty() && tok.back() == ',') tok.pop_back();
        if (tok.empty()) continue;
        out.push_back(parse_double(name, line, tok));
    }
    return out;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

SimulationConfig parse_config(std::istream& in, const std::string& name) {
    SimulationConfig cfg;
    std::vector<BumpComponent> bumps;
    enum class Section { top, bump, term, grid } section = Section::top;
    bool saw_grid = false;

    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        if (size_t hash = line.find('#'); hash != std::string::npos)
            line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                fail(name, lineno, "unterminated section header");
            std::string sec = trim(line.substr(1, line.size() - 2));
            if (sec == "bump") {
                section = Section::bump;
                bumps.emplace_back();
            } else if (sec == "term") {
                section = Section::term;
                cfg.terms.emplace_back();
            } else if (sec == "grid") {
                if (saw_grid) fail(name, lineno, "duplicate [grid] section");
                saw_grid = true;
                section = Section::grid;
            } else {
                fail(name, lineno, "unknown section [" + sec + "]");
            }
            continue;
        }

        size_t eq = line.find('=');
        if (eq == std::string::npos)
            fail(name, lineno, "expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail(name, lineno, "empty key");
        if (value.empty()) fail(name, lineno, "empty value for '" + key + "'");

        switch (section) {
            case Section::top:
                if (key == "label")
                    cfg.label = value;
                else if (key == "l")
                    cfg.dim.l = parse_int(name, lineno, value);
                else if (key == "eps")
                    cfg.epsilons = parse_list(name, lineno, value);
                else if (key == "observers")
                    cfg.observers = parse_list(name, lineno, value);
                else
                    fail(name, lineno, "unknown top-level key '" + key + "'");
                break;
            case Section::bump: {
                BumpComponent& b = bumps.back();
                if (key == "amplitude")
                    b.amplitude = parse_double(name, lineno, value);
                else if (key == "center")
                    b.center = parse_double(name, lineno, value);
                else if (key == "width")
                    b.width = parse_double(name, lineno, value);
                else if (key == "smoothness")
                    b.smoothness = parse_int(name, lineno, value);
                else
                    fail(name, lineno, "unknown [bump] key '" + key + "'");
                break;
            }
            case Section::term: {
                NonlinearityTerm& t = cfg.terms.back();
                if (key == "c")
                    t.c = parse_double(name, lineno, value);
                else if (key == "p")
                    t.p = parse_int(name, lineno, value);
                else if (key == "q")
                    t.q = parse_int(name, lineno, value);
                else if (key == "alpha")
                    t.alpha = parse_double(name, lineno, value);
                else if (key == "beta")
                    t.beta = parse_double(name, lineno, value);
                else
                    fail(name, lineno, "unknown [term] key '" + key + "'");
                break;
            }
            case Section::grid: {
                GridConfig& g = cfg.grid;
                if (key == "dr")
                    g.dr = parse_double(name, lineno, value);
                else if (key == "r_out")
                    g.r_out = parse_double(name, lineno, value);
                else if (key == "cfl")
                    g.cfl = parse_double(name, lineno, value);
                else if (key == "t_max")
                    g.t_max = parse_double(name, lineno, value);
                else if (key == "fd_order")
                    g.fd_order = parse_int(name, lineno, value);
                else if (key == "sample_dt")
                    g.sample_dt = parse_double(name, lineno, value);
                else
                    fail(name, lineno, "unknown [grid] key '" + key + "'");
                break;
            }
        }
    }

    if (!bumps.empty()) {
        try {
            cfg.profile = GeneratingFunction(bumps);
        } catch (const std::exception& e) {
            fail(name, lineno, std::string("invalid profile: ") + e.what());
        }
    }
    return cfg;
}

SimulationConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    return parse_config(in, path);
}

std::string canonical_config(const SimulationConfig& config) {
    std::ostringstream out;
    if (!config.label.empty()) out << "label = " << config.label << "\n";
    out << "l = " << config.dim.l << "\n";
    if (!config.epsilons.empty()) {
        out << "eps =";
        for (double e : config.epsilons) out << " " << fmt(e);
        out << "\n";
    }
    if (!config.observers.empty()) {
        out << "observers =";
        for (double r : config.observers) out << " " << fmt(r);
        out << "\n";
    }
    for (const BumpComponent& b : config.profile.bumps()) {
        out << "\n[bump]\n";
        out << "amplitude = " << fmt(b.amplitude) << "\n";
        out << "center = " << fmt(b.center) << "\n";
        out << "width = " << fmt(b.width) << "\n";
        out << "smoothness = " << b.smoothness << "\n";
    }
    for (const NonlinearityTerm& t : config.terms) {
        out << "\n[term]\n";
        out << "c = " << fmt(t.c) << "\n";
        out << "p = " << t.p << "\n";
        out << "q = " << t.q << "\n";
        out << "alpha = " << fmt(t.alpha) << "\n";
        out << "beta = " << fmt(t.beta) << "\n";
    }
    const GridConfig& g = config.grid;
    out << "\n[grid]\n";
    out << "dr = " << fmt(g.dr) << "\n";
    out << "r_out = " << fmt(g.r_out) << "\n";
    out << "cfl = " << fmt(g.cfl) << "\n";
    out << "t_max = " << fmt(g.t_max) << "\n";
    out << "fd_order = " << g.fd_order << "\n";
    out << "sample_dt = " << fmt(g.sample_dt) << "\n";
    return out.str();
}

std::string config_hash(const SimulationConfig& config) {
    std::string text = canonical_config(config);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

}  // namespace wavetail
