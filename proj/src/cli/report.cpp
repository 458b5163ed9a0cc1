#include "povm_discrim/cli/report.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace povm_discrim::cli {

using nlohmann::json;

json task_echo(const TaskSpec& task) {
  json targets = json::array();
  for (std::size_t x : task.targets) targets.push_back(task.names[x]);
  return {{"mode", std::string(to_string(task.mode))},
          {"shots", task.shots},
          {"dimension", task.observables.front().dim()},
          {"outcomes", task.observables.front().outcome_count()},
          {"observables", task.names},
          {"priors", task.priors},
          {"targets", std::move(targets)}};
}

json region_table(const RegionMap& map, const std::vector<std::string>& names, std::size_t k) {
  json rows = json::array();
  for (std::size_t i = 0; i < map.patterns.size(); ++i) {
    const std::size_t r = map.region[i];
    rows.push_back({{"pattern", pattern_name(map.patterns[i])},
                    {"orbit_size", orbit_size(map.patterns[i].block_count, k)},
                    {"conclusion", r == kInconclusive ? std::string("?") : names.at(r)}});
  }
  return rows;
}

json assignment_table(const Assignment& assignment, const std::vector<std::string>& names, std::size_t k) {
  json rows = json::array();
  for (std::size_t i = 0; i < assignment.patterns.size(); ++i)
    rows.push_back({{"pattern", pattern_name(assignment.patterns[i])},
                    {"orbit_size", orbit_size(assignment.patterns[i].block_count, k)},
                    {"conclusion", names.at(assignment.observable[i])}});
  return rows;
}

std::vector<std::string> check_report_schema(const json& report) {
  std::vector<std::string> errors;
  if (!report.is_object()) return {"report is not an object"};
  auto need = [&](const char* key, auto pred, const char* type) {
    if (!report.contains(key))
      errors.push_back(std::string("missing \"") + key + "\"");
    else if (!pred(report.at(key)))
      errors.push_back(std::string("\"") + key + "\" must be " + type);
  };
  need("command", [](const json& v) { return v.is_string(); }, "a string");
  need("status", [](const json& v) { return v.is_number_integer() && v.get<int>() >= 0 && v.get<int>() <= 3; },
       "an integer in 0..3");
  need("result", [](const json& v) { return v.is_object(); }, "an object");
  need("diagnostics", [](const json& v) { return v.is_object(); }, "an object");
  if (report.contains("task") && !report.at("task").is_object()) errors.push_back("\"task\" must be an object");
  if (report.contains("probe")) {
    const json& probe = report.at("probe");
    bool ok = probe.is_null() || probe.is_array();
    if (probe.is_array())
      for (const auto& amp : probe)
        ok = ok && amp.is_array() && amp.size() == 2 && amp[0].is_number() && amp[1].is_number();
    if (!ok) errors.push_back("\"probe\" must be null or an array of [re, im] pairs");
  }
  if (report.contains("table")) {
    const json& table = report.at("table");
    bool ok = table.is_array();
    if (ok)
      for (const auto& row : table)
        ok = ok && row.is_object() && row.contains("pattern") && row.at("pattern").is_string() &&
             row.contains("conclusion") && row.at("conclusion").is_string();
    if (!ok) errors.push_back("\"table\" rows need string \"pattern\" and \"conclusion\"");
  }
  return errors;
}

std::string format_complex(double re, double im, int precision) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(precision);
  const double eps = 0.5 * std::pow(10.0, -precision);
  if (std::abs(im) < eps) {
    os << re;
  } else if (std::abs(re) < eps) {
    os << im << "i";
  } else {
    os << re << (im < 0 ? " - " : " + ") << std::abs(im) << "i";
  }
  return os.str();
}

namespace {

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) {
    std::ostringstream os;
    os << std::setprecision(12) << v.get<double>();
    return os.str();
  }
  return v.dump();
}

void render_object(const json& obj, std::ostream& out, const std::string& indent) {
  for (const auto& [key, value] : obj.items()) {
    if (value.is_object()) {
      out << indent << key << ":\n";
      render_object(value, out, indent + "  ");
    } else if (value.is_array() && !value.empty() && !value.front().is_primitive()) {
      out << indent << key << ": " << value.dump() << "\n";
    } else if (value.is_array()) {
      out << indent << key << ": ";
      for (std::size_t i = 0; i < value.size(); ++i) out << (i ? ", " : "") << scalar_text(value[i]);
      out << "\n";
    } else {
      out << indent << key << ": " << scalar_text(value) << "\n";
    }
  }
}

std::string basis_label(std::size_t index, std::size_t dim, std::size_t shots) {
  std::string digits(shots, '0');
  for (std::size_t pos = shots; pos-- > 0;) {
    digits[pos] = static_cast<char>('0' + index % dim);
    index /= dim;
  }
  return "|" + digits + ">";
}

}  // namespace

void render_text(const json& report, std::ostream& out) {
  out << report.value("command", std::string("?")) << " (status " << report.value("status", -1) << ")\n";
  if (report.contains("task")) {
    out << "task:\n";
    render_object(report.at("task"), out, "  ");
  }
  if (report.contains("result")) {
    out << "result:\n";
    render_object(report.at("result"), out, "  ");
  }
  if (report.contains("probe") && report.at("probe").is_array()) {
    const json& probe = report.at("probe");
    std::size_t dim = 0;
    std::size_t shots = 0;
    if (report.contains("task")) {
      dim = report.at("task").value("dimension", std::size_t{0});
      shots = report.at("task").value("shots", std::size_t{0});
    }
    out << "probe (nonzero amplitudes):\n";
    for (std::size_t i = 0; i < probe.size(); ++i) {
      const double re = probe[i][0].get<double>();
      const double im = probe[i][1].get<double>();
      if (std::hypot(re, im) < 1e-10) continue;
      const bool labelled = dim > 1 && shots > 0 && std::pow(double(dim), double(shots)) == double(probe.size());
      out << "  " << std::left << std::setw(12) << (labelled ? basis_label(i, dim, shots) : std::to_string(i))
          << format_complex(re, im, 9) << "\n";
    }
  }
  if (report.contains("table") && report.at("table").is_array()) {
    out << "table:\n";
    out << "  " << std::left << std::setw(12) << "result" << std::setw(8) << "orbit" << "conclusion\n";
    for (const auto& row : report.at("table")) {
      out << "  " << std::left << std::setw(12) << row.value("pattern", std::string("?")) << std::setw(8)
          << (row.contains("orbit_size") ? row.at("orbit_size").dump() : std::string("-"))
          << row.value("conclusion", std::string("?")) << "\n";
    }
  }
  if (report.contains("diagnostics")) {
    out << "diagnostics:\n";
    render_object(report.at("diagnostics"), out, "  ");
  }
}

}  // namespace povm_discrim::cli
