#ifndef WEYLCLT_IO_HPP
#define WEYLCLT_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "weylclt/char_fn.hpp"
#include "weylclt/clt.hpp"
#include "weylclt/fock.hpp"
#include "weylclt/gaussian.hpp"

namespace weylclt::io {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

/// Throws std::runtime_error with the path on missing or malformed files.
json load_json_file(const std::string& path);

struct StateSpec {
  FockSpaceSpec space;
  StateParams params;
};

/// State specification:
///   {"d": 1, "cutoff": 40, "state": {"kind": "vacuum"}}
/// Kinds: vacuum; number {"n": int|[int]}; coherent {"alpha": [re,im] or
/// [[re,im], ...]}; thermal {"nbar": x|[x]}; ginibre_random {"seed": int};
/// explicit {"matrix": rows of [re, im] pairs, row-major}.
StateSpec parse_state_spec(const json& spec);

/// Covariance input: either a bare row-major array of (2d)^2 reals, or
/// {"d": d, "q": [...]} / {"q": [[row], ...]}.
CovarianceMatrix parse_covariance(const json& spec);

/// Points input: a bare list of coordinate arrays or {"points": [...]}.
std::vector<PhaseVector> parse_points(const json& spec);

/// Classical measure: {"family": "rademacher"} | {"family": "uniform",
/// "halfwidth": h} | {"family": "pareto", "alpha": a, "scale": s} |
/// {"family": "atoms", "atoms": [[value, weight], ...]}.
ClassicalMeasure parse_classical_measure(const json& spec);

/// Shortest representation that round-trips; C-locale '.' decimal point.
std::string format_double(double v);

/// One row per lattice point: x1,y1,...,xd,yd,re,im with a header row.
void write_grid_csv(std::ostream& out, const CharFn& f, const GridSpec& grid);

/// Columns value,weight.
void write_measure_csv(std::ostream& out, const DiscreteMeasure& mu);

ordered_json clt_report_json(const CltReport& report, const GridSpec& grid,
                             std::uint64_t seed);

}  // namespace weylclt::io

#endif  // WEYLCLT_IO_HPP
