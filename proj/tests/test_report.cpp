#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "tangle/ghz_state.hpp"
#include "tangle/report.hpp"

using namespace tangle;
using nlohmann::json;

namespace {

const HamiltonianParams r2{2.0, 1.0, 1.0};

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) out.push_back(line);
  return out;
}

std::vector<std::string> fields_of(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  for (std::string f; std::getline(is, f, ',');) out.push_back(f);
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

}  // namespace

TEST_CASE("format_sig") {
  CHECK(format_sig(0.8) == "0.8");
  CHECK(format_sig(0.0) == "0");
  CHECK(format_sig(-0.0) == "0");  // negative zero never leaks into output
  CHECK(format_sig(pi) == "3.14159265359");
  CHECK(format_sig(1e-17) == "1e-17");
  CHECK(format_sig(-2.5) == "-2.5");
  CHECK(format_sig(0.1234567890123456) == "0.123456789012");
}

TEST_CASE("op_label") {
  CHECK(op_label(LocalOp::sigma_z()) == "sigma_z");
  CHECK(op_label(LocalOp::flip()) == "flip");
  CHECK(op_label(LocalOp::phase_shift(0.5)) == "phase_shift:0.5");
  CHECK(op_label(LocalOp::phase_shift(-1.25)) == "phase_shift:-1.25");
}

TEST_CASE("trajectory CSV shape") {
  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(i * 0.05 * period(r2));
  const auto pts = sample_trajectory(make_state(0.36, 1.2), r2, grid);

  std::ostringstream os;
  write_trajectory_csv(os, pts);
  const auto lines = lines_of(os.str());

  REQUIRE(lines.size() == pts.size() + 1);
  CHECK(lines[0] == "t_tilde,t,p,varphi,tau,gamma,op");
  double prev = -1.0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = fields_of(lines[i]);
    REQUIRE(f.size() == 7);
    CHECK(f[6].empty());
    const double tt = std::stod(f[0]);
    CHECK(tt > prev);
    prev = tt;
    // tau reconstructs from p within round-trip precision
    const double p = std::stod(f[2]);
    const double tau = std::stod(f[4]);
    CHECK(std::abs(tau - 4.0 * p * (1.0 - p)) < 1e-9);
  }
}

TEST_CASE("timeline CSV marks op rows") {
  const ProtocolTimeline tl = run_sigma_z_protocol(make_state(0.36, 1.2), r2, 0.8, 1.0, 0.01);
  REQUIRE(tl.op_count() >= 2);

  std::ostringstream os;
  write_timeline_csv(os, tl);
  const auto lines = lines_of(os.str());
  REQUIRE(lines.size() == tl.points.size() + 1);

  for (const OpEvent& ev : tl.ops) {
    const auto f = fields_of(lines[ev.point_index + 1]);
    REQUIRE(f.size() == 7);
    CHECK(f[6] == op_label(ev.op));
    CHECK(std::stod(f[0]) == doctest::Approx(ev.t_tilde).epsilon(1e-10).scale(1.0));
  }
  // non-op rows keep the column empty
  std::size_t labeled = 0;
  for (std::size_t i = 1; i < lines.size(); ++i)
    if (!fields_of(lines[i])[6].empty()) ++labeled;
  CHECK(labeled == tl.op_count());
}

TEST_CASE("heatmap CSV is y-major") {
  HeatmapGrid g;
  g.x = {0.0, 1.0, 2.0};
  g.y = {10.0, 20.0};
  g.value = {1, 2, 3, 4, 5, 6};  // value[j*3+i]

  std::ostringstream os;
  write_heatmap_csv(os, g);
  const auto lines = lines_of(os.str());
  REQUIRE(lines.size() == 7);
  CHECK(lines[0] == "x,y,value");
  CHECK(lines[1] == "0,10,1");
  CHECK(lines[2] == "1,10,2");
  CHECK(lines[4] == "0,20,4");
  CHECK(lines[6] == "2,20,6");
}

TEST_CASE("trajectory and timeline JSON parse back") {
  std::vector<double> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back(i * 0.1 * period(r2));
  const auto pts = sample_trajectory(make_state(0.36, 1.2), r2, grid);

  const json tr = json::parse(trajectory_json(pts));
  REQUIRE(tr.is_array());
  REQUIRE(tr.size() == pts.size());
  CHECK(tr[3]["t_tilde"].get<double>() == doctest::Approx(pts[3].t_tilde).epsilon(1e-12));
  CHECK(tr[3]["tau"].get<double>() == doctest::Approx(pts[3].tau).epsilon(1e-12));
  CHECK(tr[3]["op"].get<std::string>().empty());

  const ProtocolTimeline tl = run_sigma_z_protocol(make_state(0.36, 1.2), r2, 0.8, 1.0, 0.01);
  const json tj = json::parse(timeline_json(tl));
  REQUIRE(tj.size() == tl.points.size());
  CHECK(tj[tl.ops[1].point_index]["op"].get<std::string>() == op_label(tl.ops[1].op));
}

TEST_CASE("timeline summary JSON") {
  const ProtocolTimeline tl = run_sigma_z_protocol(make_state(0.36, 1.2), r2, 0.8, 2.0, 0.01);
  const json s = json::parse(timeline_summary_json(tl));
  CHECK(s["tau_floor"].get<double>() == doctest::Approx(tl.tau_floor).epsilon(1e-12));
  CHECK(s["op_count"].get<std::size_t>() == tl.op_count());
  CHECK(s["delta_t"].get<double>() == doctest::Approx(tl.delta_t).epsilon(1e-12));
  CHECK(s["guard_from"].get<double>() == doctest::Approx(tl.guard_from).epsilon(1e-12));
  REQUIRE(s["ops"].size() == tl.op_count());
  CHECK(s["ops"][0]["t_tilde"].get<double>() == 0.0);

  // a one-shot stationary run has no op spacing: null, not NaN
  const ProtocolTimeline one = run_stationary_protocol(make_state(0.36, 1.2), r2, 0.0, 1.0, 0.01);
  const json s1 = json::parse(timeline_summary_json(one));
  CHECK(s1["delta_t"].is_null());
}

TEST_CASE("heatmap and optimization JSON") {
  HeatmapGrid g;
  g.x = {0.0, 0.5};
  g.y = {1.0};
  g.value = {3.0, 4.0};
  const json h = json::parse(heatmap_json(g));
  CHECK(h["x"].size() == 2);
  CHECK(h["value"][1].get<double>() == 4.0);

  const json o = json::parse(optimization_json(optimization_report(GHZState(0.8, 1.2), r2)));
  CHECK(o["varphi_op"].get<double>() == doctest::Approx(4.2487413713838835).epsilon(1e-12));
  CHECK(o["branch"].get<int>() == 2);
  CHECK(o["flip_useful"].get<bool>());
  CHECK(o["flip_reason"].get<std::string>() == "cond2");
  CHECK(o["gamma0_after"].get<double>() == doctest::Approx(3.0159289474462008).epsilon(1e-12));
  CHECK(o["paths"]["b"]["varphi"].get<double>() == doctest::Approx(4.2487413713838835).epsilon(1e-12));
  CHECK(o["paths"]["gamma0_d"].get<double>() == doctest::Approx(o["paths"]["gamma0_b"].get<double>()).epsilon(1e-10));
}

TEST_CASE("emission is byte-stable") {
  const ProtocolTimeline tl = run_sigma_z_protocol(make_state(0.36, 1.2), r2, 0.8, 1.5, 0.01);
  std::ostringstream a, b;
  write_timeline_csv(a, tl);
  write_timeline_csv(b, tl);
  CHECK(a.str() == b.str());
  CHECK(timeline_json(tl) == timeline_json(tl));
  CHECK(timeline_summary_json(tl) == timeline_summary_json(tl));
}
