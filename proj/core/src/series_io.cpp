#include "wavetail/series_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace wavetail {
namespace {

constexpr const char* kMagic = "wavetail-series v1";

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

[[noreturn]] void fail(const std::string& name, int line,
                       const std::string& msg) {
    throw std::runtime_error(name + ":" + std::to_string(line) + ": " + msg);
}

double parse_field(const std::string& name, int line, const char* s,
                   const char** end_out) {
    char* end = nullptr;
    double v = std::strtod(s, &end);
    if (end == s) fail(name, line, "expected a number");
    *end_out = end;
    return v;
}

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

void write_series_csv(std::ostream& out, const SeriesMeta& meta,
                      const ObserverSeries& series) {
    out << "# " << kMagic << "\n";
    if (!meta.label.empty()) out << "# label = " << meta.label << "\n";
    if (!meta.config.empty()) out << "# config = " << meta.config << "\n";
    out << "# l = " << meta.l << "\n";
    out << "# eps = " << fmt(meta.eps) << "\n";
    out << "# r_obs = " << fmt(series.r_obs) << "\n";
    out << "# support_radius = " << fmt(meta.support_radius) << "\n";
    if (!meta.terms.empty()) out << "# terms = " << meta.terms << "\n";
    out << "t,phi,dphi_dt\n";
    for (size_t i = 0; i < series.t.size(); ++i)
        out << fmt(series.t[i]) << "," << fmt(series.phi[i]) << ","
            << fmt(series.dphi_dt[i]) << "\n";
}

void write_series_csv(const std::string& path, const SeriesMeta& meta,
                      const ObserverSeries& series) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    write_series_csv(out, meta, series);
    if (!out) throw std::runtime_error("write failed: " + path);
}

LoadedSeries read_series_csv(std::istream& in, const std::string& name) {
    LoadedSeries out;
    std::string line;
    int lineno = 0;
    bool saw_magic = false, saw_columns = false;

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        if (line.front() == '#') {
            std::string body = trim(line.substr(1));
            if (!saw_magic) {
                if (body != kMagic)
                    fail(name, lineno,
                         std::string("not a series file (expected '") +
                             kMagic + "')");
                saw_magic = true;
                continue;
            }
            size_t eq = body.find('=');
            if (eq == std::string::npos) continue;
            std::string key = trim(body.substr(0, eq));
            std::string value = trim(body.substr(eq + 1));
            const char* end = nullptr;
            if (key == "label")
                out.meta.label = value;
            else if (key == "config")
                out.meta.config = value;
            else if (key == "l")
                out.meta.l = static_cast<int>(
                    parse_field(name, lineno, value.c_str(), &end));
            else if (key == "eps")
                out.meta.eps = parse_field(name, lineno, value.c_str(), &end);
            else if (key == "r_obs")
                out.series.r_obs =
                    parse_field(name, lineno, value.c_str(), &end);
            else if (key == "support_radius")
                out.meta.support_radius =
                    parse_field(name, lineno, value.c_str(), &end);
            else if (key == "terms")
                out.meta.terms = value;
            // unknown keys are forward-compatible noise
            continue;
        }

        if (!saw_magic) fail(name, lineno, "missing format tag line");
        if (!saw_columns) {
            if (trim(line) != "t,phi,dphi_dt")
                fail(name, lineno, "expected column header 't,phi,dphi_dt'");
            saw_columns = true;
            continue;
        }

        const char* s = line.c_str();
        const char* end = nullptr;
        double t = parse_field(name, lineno, s, &end);
        if (*end != ',') fail(name, lineno, "expected ',' after t");
        double phi = parse_field(name, lineno, end + 1, &end);
        if (*end != ',') fail(name, lineno, "expected ',' after phi");
        double dphi = parse_field(name, lineno, end + 1, &end);
        if (*end != '\0') fail(name, lineno, "trailing junk after row");
        out.series.t.push_back(t);
        out.series.phi.push_back(phi);
        out.series.dphi_dt.push_back(dphi);
    }
    if (!saw_columns) fail(name, lineno, "no data section found");
    return out;
}

LoadedSeries read_series_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open series file: " + path);
    return read_series_csv(in, path);
}

std::string describe_terms(const std::vector<NonlinearityTerm>& terms) {
    std::ostringstream out;
    for (size_t i = 0; i < terms.size(); ++i) {
        const NonlinearityTerm& t = terms[i];
        if (i) out << "; ";
        out << "c=" << fmt(t.c) << " p=" << t.p << " q=" << t.q
            << " alpha=" << fmt(t.alpha) << " beta=" << fmt(t.beta);
    }
    return out.str();
}

}  // namespace wavetail
