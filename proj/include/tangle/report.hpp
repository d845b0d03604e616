#pragma once

// Emission layer: byte-stable CSV/JSON output with 12 significant digits.

#include <iosfwd>
#include <string>
#include <vector>

#include "tangle/evolution.hpp"
#include "tangle/optimizer.hpp"
#include "tangle/protocol.hpp"

namespace tangle {

// "%.12g" with negative zero normalized
std::string format_sig(double v);

// sigma_z | phase_shift:<delta> | flip (no commas: safe inside CSV)
std::string op_label(const LocalOp& op);

// header t_tilde,t,p,varphi,tau,gamma,op; op column empty on free evolution
void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryPoint>& pts);

// same schema; rows referenced by OpEvent::point_index carry the op label
void write_timeline_csv(std::ostream& os, const ProtocolTimeline& tl);

struct HeatmapGrid {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> value;  // row-major: value[j * x.size() + i]
};

// header x,y,value; y-major row order
void write_heatmap_csv(std::ostream& os, const HeatmapGrid& grid);

std::string trajectory_json(const std::vector<TrajectoryPoint>& pts);
std::string timeline_json(const ProtocolTimeline& tl);
std::string timeline_summary_json(const ProtocolTimeline& tl);
std::string heatmap_json(const HeatmapGrid& grid);
std::string optimization_json(const OptimizationReport& rep);

}  // namespace tangle
