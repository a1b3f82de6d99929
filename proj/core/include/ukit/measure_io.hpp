#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "ukit/measures.hpp"
#include "ukit/transport.hpp"

namespace ukit {

// CSV forms:
//   atoms     "point,weight" header (optional) then one row per atom
//   grid      "# origin=<x0>, step=<h>" then one cell value per row
//   quantile  "level,value" header then one row per breakpoint
//   gaussian  "# gaussian mean=<m>, std=<s>" and no rows
// Blank lines and other '#' lines are ignored. Throws RepresentationError on
// malformed input, with the offending line number.
Measure1D read_measure_csv(std::istream& in);
Measure1D read_measure_file(const std::string& path);
void write_measure_csv(std::ostream& out, const Measure1D& mu);

// A measure given on the command line: "gaussian:M,S", "dirac:X",
// "uniform:A,B" or a path to a CSV file.
Measure1D parse_measure_spec(std::string_view spec);

// "x,y,mass" rows.
void write_coupling_csv(std::ostream& out, const std::vector<CouplingCell>& cells);

}  // namespace ukit
