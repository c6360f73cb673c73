// SPDX-License-Identifier: Apache-2.0
//
// File formats shared by the CLI and the Python bindings. Every floating
// point value is written with 12 significant digits.
#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "relab/aging.hpp"
#include "relab/electrodynamics.hpp"
#include "relab/epr.hpp"
#include "relab/worldline.hpp"

namespace relab::io {

/// Malformed input file or document.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// printf("%.12g")
std::string fmt(double v);

// Worldlines: JSON array of {tau, x, y, z, t, vx, vy, vz, vt}. Accelerations
// are optional (ax, ay, az, at); when absent they are estimated from the
// sampled velocities.
std::string worldline_to_json(const Worldline& w);
Worldline worldline_from_json(const std::string& text);

// EPR result records ----------------------------------------------------------

struct EprRecord {
  double theta1_deg = 0.0;
  double theta2_deg = 0.0;
  epr::CoincidenceEstimate estimate;
  double analytic = 0.0;
  double deviation = 0.0;
};

EprRecord make_epr_record(double theta1_rad, double theta2_rad, const epr::EstimateOptions& opt);

std::string epr_csv_header();
std::string epr_csv_row(const EprRecord& r);
std::string epr_json(const std::vector<EprRecord>& rows);

// Twin reports and chart data -------------------------------------------------

std::string twin_csv_header();
/// `length_scale` multiplies every length and (ct) time on output.
std::string twin_csv_row(const aging::TwinReport& r, double length_scale = 1.0);
std::string twin_json(const std::vector<aging::TwinReport>& rows, double length_scale = 1.0);

/// {curves: [{name, points: [[x,t],...]}], events: [{name, x, t}], params: {D, beta}}
std::string chart_to_json(const aging::ChartData& chart);

// Dynamics configuration and trajectories --------------------------------------

/// Parses {particles: [{mass, charge, history}], dtau, tau_end, min_separation,
/// lightcone_tolerance?, renormalize_velocity?, interpolation?}. `history` is
/// either a path to a worldline JSON file (resolved against `base_dir`) or a
/// generator object {type: "uniform"|"static", position: [x,y,z],
/// beta: [bx,by,bz] or scalar along x, depth}. Generated histories end at
/// tau = 0, t = 0 and reach `depth` back in coordinate time.
ed::SystemState parse_system_config(const std::string& text, const std::string& base_dir = ".");

std::string trajectory_csv_header();
/// Rows for every sample with tau >= tau_from, particle by particle.
void write_trajectory_csv(std::ostream& os, const ed::SystemState& s, double tau_from);

std::string diagnostics_summary_json(const ed::IntegrationResult& r);

}  // namespace relab::io
