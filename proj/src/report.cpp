#include "tangle/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <unordered_map>

#include <json.hpp>

namespace tangle {

namespace {

using nlohmann::json;

json point_json(const TrajectoryPoint& pt, const std::string& op) {
  json j;
  j["t_tilde"] = pt.t_tilde;
  j["t"] = pt.t;
  j["p"] = pt.state.p;
  j["varphi"] = pt.state.varphi;
  j["tau"] = pt.tau;
  j["gamma"] = pt.gamma;
  j["op"] = op;
  return j;
}

// point_index -> label; coincident ops joined with ';'
std::unordered_map<std::size_t, std::string> op_labels(const ProtocolTimeline& tl) {
  std::unordered_map<std::size_t, std::string> labels;
  for (const auto& ev : tl.ops) {
    auto& slot = labels[ev.point_index];
    if (!slot.empty()) slot += ';';
    slot += op_label(ev.op);
  }
  return labels;
}

void write_row(std::ostream& os, const TrajectoryPoint& pt, const std::string& op) {
  os << format_sig(pt.t_tilde) << ',' << format_sig(pt.t) << ',' << format_sig(pt.state.p) << ','
     << format_sig(pt.state.varphi) << ',' << format_sig(pt.tau) << ',' << format_sig(pt.gamma)
     << ',' << op << '\n';
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

std::string format_sig(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string op_label(const LocalOp& op) {
  switch (op.kind) {
    case LocalOp::Kind::PhaseShift:
      return "phase_shift:" + format_sig(op.delta);
    case LocalOp::Kind::SigmaZ:
      return "sigma_z";
    case LocalOp::Kind::Flip:
      return "flip";
  }
  return "";
}

void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryPoint>& pts) {
  os << "t_tilde,t,p,varphi,tau,gamma,op\n";
  for (const auto& pt : pts) write_row(os, pt, "");
}

void write_timeline_csv(std::ostream& os, const ProtocolTimeline& tl) {
  const auto labels = op_labels(tl);
  os << "t_tilde,t,p,varphi,tau,gamma,op\n";
  for (std::size_t i = 0; i < tl.points.size(); ++i) {
    const auto it = labels.find(i);
    write_row(os, tl.points[i], it == labels.end() ? std::string() : it->second);
  }
}

void write_heatmap_csv(std::ostream& os, const HeatmapGrid& grid) {
  os << "x,y,value\n";
  for (std::size_t j = 0; j < grid.y.size(); ++j)
    for (std::size_t i = 0; i < grid.x.size(); ++i)
      os << format_sig(grid.x[i]) << ',' << format_sig(grid.y[j]) << ','
         << format_sig(grid.value[j * grid.x.size() + i]) << '\n';
}

std::string trajectory_json(const std::vector<TrajectoryPoint>& pts) {
  json arr = json::array();
  for (const auto& pt : pts) arr.push_back(point_json(pt, ""));
  return arr.dump(2) + "\n";
}

std::string timeline_json(const ProtocolTimeline& tl) {
  const auto labels = op_labels(tl);
  json arr = json::array();
  for (std::size_t i = 0; i < tl.points.size(); ++i) {
    const auto it = labels.find(i);
    arr.push_back(point_json(tl.points[i], it == labels.end() ? std::string() : it->second));
  }
  return arr.dump(2) + "\n";
}

std::string timeline_summary_json(const ProtocolTimeline& tl) {
  json ops = json::array();
  for (const auto& ev : tl.ops) ops.push_back({{"t_tilde", ev.t_tilde}, {"op", op_label(ev.op)}});
  json j;
  j["tau_floor"] = tl.tau_floor;
  j["op_count"] = tl.op_count();
  j["delta_t"] = finite_or_null(tl.delta_t);
  j["guard_from"] = tl.guard_from;
  j["ops"] = ops;
  return j.dump(2) + "\n";
}

std::string heatmap_json(const HeatmapGrid& grid) {
  json j;
  j["x"] = grid.x;
  j["y"] = grid.y;
  j["value"] = grid.value;
  return j.dump(2) + "\n";
}

std::string optimization_json(const OptimizationReport& rep) {
  json j;
  j["varphi_op"] = rep.phase.varphi;
  j["branch"] = rep.phase.branch;
  j["phi_boundary"] = rep.phase.phi_boundary;
  j["zero_ratio"] = rep.phase.zero_ratio;
  j["gamma0_before"] = rep.gamma0_before;
  j["gamma0_after"] = rep.gamma0_after;
  j["t_max_before"] = rep.t_max_before;
  j["t_max_after"] = rep.t_max_after;
  j["ratio"] = rep.ratio;
  j["flip_useful"] = rep.flip.useful;
  j["flip_reason"] = to_string(rep.flip.reason);
  j["gamma0_flip"] = rep.flip.gamma0_flip;
  const auto endpoint = [](const GHZState& s) {
    return json{{"p", s.p}, {"varphi", s.varphi}};
  };
  j["paths"] = {{"a", endpoint(rep.paths.a)},      {"b", endpoint(rep.paths.b)},
                {"c", endpoint(rep.paths.c)},      {"d", endpoint(rep.paths.d)},
                {"gamma0_a", rep.paths.gamma0_a},  {"gamma0_b", rep.paths.gamma0_b},
                {"gamma0_c", rep.paths.gamma0_c},  {"gamma0_d", rep.paths.gamma0_d},
                {"tau", rep.paths.tau},            {"degenerate", rep.paths.degenerate}};
  return j.dump(2) + "\n";
}

}  // namespace tangle
