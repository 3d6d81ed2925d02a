#ifndef WAVETAIL_SERIES_IO_HPP
#define WAVETAIL_SERIES_IO_HPP

#include "wavetail/evolver.hpp"

#include <iosfwd>
#include <string>

namespace wavetail {

/// Provenance stamped into every series file, echoed back on load.
struct SeriesMeta {
    std::string label;
    std::string config;  ///< config_hash of the generating config
    int l = 1;
    double eps = 0.0;
    double support_radius = 0.0;
    std::string terms;  ///< human-readable source summary
};

/// CSV layout: '#'-prefixed "key = value" metadata lines (first one is the
/// format tag), one column-header line "t,phi,dphi_dt", then full-precision
/// data rows.
void write_series_csv(std::ostream& out, const SeriesMeta& meta,
                      const ObserverSeries& series);
void write_series_csv(const std::string& path, const SeriesMeta& meta,
                      const ObserverSeries& series);

struct LoadedSeries {
    SeriesMeta meta;
    ObserverSeries series;
};

/// Inverse of write_series_csv.  Unknown metadata keys are ignored (the
/// format may grow); malformed rows are hard errors with line numbers.
LoadedSeries read_series_csv(std::istream& in,
                             const std::string& name = "<series>");
LoadedSeries read_series_csv(const std::string& path);

/// Compact one-line rendering of source terms, e.g.
/// "c=1 p=2 q=0 alpha=0 beta=0; c=-1 p=0 q=2 alpha=0 beta=1".
std::string describe_terms(const std::vector<NonlinearityTerm>& terms);

}  // namespace wavetail

#endif
