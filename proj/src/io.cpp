#include "lowbow/io.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>
#include <tuple>

#include "json.hpp"

namespace lowbow {

namespace {

using nlohmann::json;

json point_coords_json(const SimplexPoint& point) {
  json arr = json::array();
  for (double v : point.coords()) arr.push_back(v);
  return arr;
}

json curve_json_object(const LowbowCurve& curve) {
  if (!std::isfinite(curve.sigma))
    throw std::invalid_argument("cannot serialize a curve with non-finite sigma");
  json obj;
  obj["locations"] = curve.locations;
  json pts = json::array();
  for (const auto& p : curve.points) pts.push_back(point_coords_json(p));
  obj["points"] = std::move(pts);
  obj["sigma"] = curve.sigma;
  obj["c"] = curve.c;
  obj["kernel"] = kernel_name(curve.family);
  if (curve.family == KernelFamily::Beta) obj["beta_floor"] = curve.beta_floor;
  return obj;
}

LowbowCurve curve_from_json_object(const json& obj) {
  LowbowCurve curve;
  curve.locations = obj.at("locations").get<std::vector<double>>();
  for (const auto& arr : obj.at("points"))
    curve.points.emplace_back(arr.get<std::vector<double>>());
  curve.sigma = obj.at("sigma").get<double>();
  curve.c = obj.at("c").get<double>();
  curve.family = kernel_from_name(obj.at("kernel").get<std::string>());
  if (obj.contains("beta_floor")) curve.beta_floor = obj.at("beta_floor").get<double>();

  if (curve.locations.size() < 2 || curve.locations.size() != curve.points.size())
    throw std::invalid_argument("curve needs matching locations and points, at least 2");
  for (std::size_t i = 0; i < curve.locations.size(); ++i) {
    const double mu = curve.locations[i];
    if (!(mu >= 0.0 && mu <= 1.0) || (i > 0 && !(mu > curve.locations[i - 1])))
      throw std::invalid_argument("curve locations must increase strictly within [0,1]");
    if (curve.points[i].size() != curve.points.front().size())
      throw std::invalid_argument("curve points must share one dimension");
  }
  if (!(curve.sigma > 0.0)) throw std::invalid_argument("kernel scale must be positive");
  if (!(curve.c >= 0.0))
    throw std::invalid_argument("smoothing coefficient must be >= 0");
  return curve;
}

std::string sigma_field(double sigma) {
  if (std::isnan(sigma)) return "";
  if (std::isinf(sigma)) return "inf";
  return format_double(sigma);
}

std::string confusion_field(const EvalReport& report) {
  std::string out;
  for (const auto& [truth, row] : report.confusion)
    for (const auto& [predicted, count] : row) {
      if (!out.empty()) out += ';';
      out += truth + '>' + predicted + ':' + std::to_string(count);
    }
  return out;
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string point_to_csv(const SimplexPoint& point) {
  std::string out;
  for (std::size_t i = 0; i < point.size(); ++i) {
    if (i) out += ',';
    out += format_double(point[i]);
  }
  return out;
}

std::string point_to_json(const SimplexPoint& point) {
  return point_coords_json(point).dump();
}

std::string curve_to_json(const LowbowCurve& curve) {
  return curve_json_object(curve).dump();
}

LowbowCurve curve_from_json(const std::string& text) {
  return curve_from_json_object(json::parse(text));
}

void write_curves_jsonl(std::ostream& out, const std::vector<LowbowCurve>& curves) {
  for (const auto& curve : curves) out << curve_to_json(curve) << '\n';
}

std::vector<LowbowCurve> read_curves_jsonl(std::istream& in) {
  std::vector<LowbowCurve> curves;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    curves.push_back(curve_from_json(line));
  }
  return curves;
}

void write_curve_csv(std::ostream& out, const LowbowCurve& curve) {
  out << "mu";
  for (std::size_t j = 1; j <= curve.point_size(); ++j) out << ",x" << j;
  out << '\n';
  for (std::size_t k = 0; k < curve.samples(); ++k)
    out << format_double(curve.locations[k]) << ',' << point_to_csv(curve.points[k])
        << '\n';
}

void write_curves_csv(std::ostream& out, const std::vector<LowbowCurve>& curves) {
  if (curves.empty()) return;
  out << "doc,mu";
  for (std::size_t j = 1; j <= curves.front().point_size(); ++j) out << ",x" << j;
  out << '\n';
  for (std::size_t d = 0; d < curves.size(); ++d)
    for (std::size_t k = 0; k < curves[d].samples(); ++k)
      out << d << ',' << format_double(curves[d].locations[k]) << ','
          << point_to_csv(curves[d].points[k]) << '\n';
}

void write_reports_csv(std::ostream& out, const std::vector<EvalReport>& reports) {
  if (!reports.empty()) {
    const EvalReport& first = reports.front();
    out << "# config: c=" << format_double(first.c) << " samples=" << first.samples
        << " k=" << first.k << " kernel=" << kernel_name(first.kernel)
        << " metric=" << metric_name(first.metric) << " seed=" << first.seed
        << " stratified=" << (first.stratified ? 1 : 0) << '\n';
  }
  out << "method,train_size,sigma,repetition,error_rate,correct,total,confusion\n";

  // Deterministic grouping in first-encounter order for the summary rows.
  std::vector<std::tuple<std::string, std::size_t, std::string>> group_order;
  std::map<std::tuple<std::string, std::size_t, std::string>, std::vector<double>>
      group_errors;
  for (const auto& report : reports) {
    out << report.method << ',' << report.train_size << ',' << sigma_field(report.sigma)
        << ',' << report.repetition << ',' << format_double(report.error_rate) << ','
        << report.correct << ',' << report.total << ',' << confusion_field(report)
        << '\n';
    const auto key =
        std::make_tuple(report.method, report.train_size, sigma_field(report.sigma));
    auto [it, inserted] = group_errors.emplace(key, std::vector<double>{});
    if (inserted) group_order.push_back(key);
    it->second.push_back(report.error_rate);
  }
  for (const auto& key : group_order) {
    const auto& errors = group_errors[key];
    double mean = 0.0;
    for (double e : errors) mean += e;
    mean /= static_cast<double>(errors.size());
    double sd = 0.0;
    if (errors.size() > 1) {
      for (double e : errors) sd += (e - mean) * (e - mean);
      sd = std::sqrt(sd / static_cast<double>(errors.size() - 1));
    }
    out << std::get<0>(key) << ',' << std::get<1>(key) << ',' << std::get<2>(key)
        << ",mean," << format_double(mean) << ",,,\n";
    out << std::get<0>(key) << ',' << std::get<1>(key) << ',' << std::get<2>(key)
        << ",std," << format_double(sd) << ",,,\n";
  }
}

void write_figure_table_csv(std::ostream& out, const std::vector<EvalReport>& reports) {
  // Column key per (train size, method, sigma) in first-encounter order,
  // which follows the protocol's train-size and sigma ordering.
  std::vector<std::string> column_order;
  std::map<std::string, std::pair<double, std::size_t>> sums;
  std::set<std::string> task_labels;
  for (const auto& report : reports) {
    std::string method = report.method;
    if (method == "lowbow") method += "_s" + sigma_field(report.sigma);
    const std::string key = "ts" + std::to_string(report.train_size) + "_" + method;
    auto [it, inserted] = sums.emplace(key, std::make_pair(0.0, std::size_t{0}));
    if (inserted) column_order.push_back(key);
    it->second.first += report.error_rate;
    ++it->second.second;
    for (const auto& [truth, row] : report.confusion) task_labels.insert(truth);
  }

  out << "task";
  for (const auto& key : column_order) out << ',' << key;
  out << '\n';
  std::string task;
  for (const auto& label : task_labels) {
    if (!task.empty()) task += '|';
    task += label;
  }
  out << task;
  for (const auto& key : column_order) {
    const auto& [sum, count] = sums[key];
    out << ',' << format_double(sum / static_cast<double>(count));
  }
  out << '\n';
}

void write_reports_jsonl(std::ostream& out, const std::vector<EvalReport>& reports) {
  for (const auto& report : reports) {
    json obj;
    obj["method"] = report.method;
    obj["train_size"] = report.train_size;
    if (std::isinf(report.sigma))
      obj["sigma"] = "inf";
    else if (!std::isnan(report.sigma))
      obj["sigma"] = report.sigma;
    obj["repetition"] = report.repetition;
    obj["error_rate"] = report.error_rate;
    obj["correct"] = report.correct;
    obj["total"] = report.total;
    obj["confusion"] = report.confusion;
    obj["c"] = report.c;
    obj["samples"] = report.samples;
    obj["k"] = report.k;
    obj["kernel"] = kernel_name(report.kernel);
    obj["metric"] = metric_name(report.metric);
    obj["seed"] = report.seed;
    obj["stratified"] = report.stratified;
    out << obj.dump() << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "sigma,mean_error,std_error\n";
  for (const auto& row : rows)
    out << format_double(row.sigma) << ',' << format_double(row.mean_error) << ','
        << format_double(row.std_error) << '\n';
}

}  // namespace lowbow
