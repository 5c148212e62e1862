#include "well_revival/cli/serialize.hpp"

#include <cstdio>

namespace well_revival::cli {

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_csv(std::ostream& out, const DensitySnapshot& snapshot) {
  out << "x,density\n";
  for (std::size_t j = 0; j < snapshot.xs.size(); ++j) {
    out << format_double(snapshot.xs[j]) << ',' << format_double(snapshot.densities[j]) << '\n';
  }
}

void write_csv(std::ostream& out, const ProbabilityTimeseries& series) {
  out << "t,tau,probability\n";
  for (std::size_t i = 0; i < series.probs.size(); ++i) {
    out << format_double(series.times[i]) << ',' << format_double(series.taus[i]) << ','
        << format_double(series.probs[i]) << '\n';
  }
}

void write_csv(std::ostream& out, const RevivalReport& report) {
  out << "t_hat,odd_multiple,far_probability,mirror_error,deficit,slack,modes,eta,passed\n";
  out << format_double(report.t_hat) << ',' << report.odd_multiple << ',' << format_double(report.far_probability)
      << ',' << format_double(report.mirror_error) << ',' << format_double(report.deficit) << ','
      << format_double(report.slack) << ',' << report.modes << ',' << format_double(report.eta) << ','
      << (report.passed() ? "true" : "false") << '\n';
}

void write_csv(std::ostream& out, const RelativityReport& report) {
  out << "mass,length_l,length_delta,t_hat,light_crossing,margin,superluminal\n";
  out << format_double(report.mass) << ',' << format_double(report.big_l) << ','
      << (report.delta ? format_double(*report.delta) : std::string()) << ',' << format_double(report.t_hat) << ','
      << format_double(report.light_crossing) << ',' << format_double(report.margin) << ','
      << (report.superluminal ? "true" : "false") << '\n';
}

void write_csv(std::ostream& out, const ConvergenceReport& report) {
  out << "dx,dt,error,fitted_order\n";
  for (std::size_t i = 0; i < report.errors.size(); ++i) {
    out << format_double(report.dxs[i]) << ',' << format_double(report.dts[i]) << ','
        << format_double(report.errors[i]) << ',' << format_double(report.fitted_order) << '\n';
  }
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "eta,modes,deficit,far_probability,mirror_error\n";
  for (const auto& row : rows) {
    out << format_double(row.eta) << ',' << row.modes << ',' << format_double(row.deficit) << ','
        << format_double(row.far_probability) << ',' << format_double(row.mirror_error) << '\n';
  }
}

Json to_json(const DensitySnapshot& snapshot) {
  return Json{{"time", snapshot.time},
              {"tau", snapshot.tau},
              {"deficit", snapshot.deficit},
              {"x", snapshot.xs},
              {"density", snapshot.densities}};
}

Json to_json(const ProbabilityTimeseries& series) {
  return Json{{"interval", {series.interval.lo, series.interval.hi}},
              {"slack", series.slack},
              {"t", series.times},
              {"tau", series.taus},
              {"probability", series.probs}};
}

Json to_json(const RevivalReport& report) {
  return Json{{"t_hat", report.t_hat},
              {"odd_multiple", report.odd_multiple},
              {"far_probability", report.far_probability},
              {"mirror_error", report.mirror_error},
              {"deficit", report.deficit},
              {"slack", report.slack},
              {"modes", report.modes},
              {"eta", report.eta},
              {"passed", report.passed()}};
}

Json to_json(const RelativityReport& report) {
  Json j{{"mass", report.mass}, {"length_l", report.big_l}};
  j["length_delta"] = report.delta ? Json(*report.delta) : Json(nullptr);
  j["t_hat"] = report.t_hat;
  j["light_crossing"] = report.light_crossing;
  j["margin"] = report.margin;
  j["superluminal"] = report.superluminal;
  return j;
}

Json to_json(const ConvergenceReport& report) {
  return Json{{"dx", report.dxs},
              {"dt", report.dts},
              {"error", report.errors},
              {"fitted_order", report.fitted_order},
              {"monotone", report.monotone()}};
}

Json to_json(const std::vector<SweepRow>& rows) {
  Json arr = Json::array();
  for (const auto& row : rows) {
    arr.push_back(Json{{"eta", row.eta},
                       {"modes", row.modes},
                       {"deficit", row.deficit},
                       {"far_probability", row.far_probability},
                       {"mirror_error", row.mirror_error}});
  }
  return arr;
}

DensitySnapshot snapshot_from_json(const Json& j) {
  DensitySnapshot s;
  s.time = j.at("time").get<double>();
  s.tau = j.at("tau").get<double>();
  s.deficit = j.at("deficit").get<double>();
  s.xs = j.at("x").get<std::vector<double>>();
  s.densities = j.at("density").get<std::vector<double>>();
  return s;
}

ProbabilityTimeseries timeseries_from_json(const Json& j) {
  ProbabilityTimeseries s;
  s.interval = {j.at("interval").at(0).get<double>(), j.at("interval").at(1).get<double>()};
  s.slack = j.at("slack").get<double>();
  s.times = j.at("t").get<std::vector<double>>();
  s.taus = j.at("tau").get<std::vector<double>>();
  s.probs = j.at("probability").get<std::vector<double>>();
  return s;
}

RevivalReport revival_from_json(const Json& j) {
  RevivalReport r;
  r.t_hat = j.at("t_hat").get<double>();
  r.odd_multiple = j.at("odd_multiple").get<long>();
  r.far_probability = j.at("far_probability").get<double>();
  r.mirror_error = j.at("mirror_error").get<double>();
  r.deficit = j.at("deficit").get<double>();
  r.slack = j.at("slack").get<double>();
  r.modes = j.at("modes").get<std::size_t>();
  r.eta = j.at("eta").get<double>();
  return r;
}

RelativityReport relativity_from_json(const Json& j) {
  RelativityReport r;
  r.mass = j.at("mass").get<double>();
  r.big_l = j.at("length_l").get<double>();
  if (!j.at("length_delta").is_null()) r.delta = j.at("length_delta").get<double>();
  r.t_hat = j.at("t_hat").get<double>();
  r.light_crossing = j.at("light_crossing").get<double>();
  r.margin = j.at("margin").get<double>();
  r.superluminal = j.at("superluminal").get<bool>();
  return r;
}

ConvergenceReport convergence_from_json(const Json& j) {
  ConvergenceReport r;
  r.dxs = j.at("dx").get<std::vector<double>>();
  r.dts = j.at("dt").get<std::vector<double>>();
  r.errors = j.at("error").get<std::vector<double>>();
  r.fitted_order = j.at("fitted_order").get<double>();
  return r;
}

std::vector<SweepRow> sweep_from_json(const Json& j) {
  std::vector<SweepRow> rows;
  for (const auto& item : j) {
    rows.push_back({item.at("eta").get<double>(), item.at("modes").get<std::size_t>(),
                    item.at("deficit").get<double>(), item.at("far_probability").get<double>(),
                    item.at("mirror_error").get<double>()});
  }
  return rows;
}

}  // namespace well_revival::cli
