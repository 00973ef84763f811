#include "rentropy/serialize.hpp"

#include <array>
#include <utility>

#include "json.hpp"

namespace rentropy {
namespace {

using nlohmann::ordered_json;

using Field = std::pair<const char*, const std::optional<Valued>*>;

std::array<Field, 6> report_fields(const EntropyReport& r) {
  return {{{"H", &r.H},
           {"h", &r.h},
           {"H_tilde", &r.H_tilde},
           {"h_tilde", &r.h_tilde},
           {"h_hat", &r.h_hat},
           {"h_bar", &r.h_bar}}};
}

std::string number_cell(const std::optional<double>& value) {
  return value ? format_number(*value) : std::string();
}

}  // namespace

std::string csv_cell(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (const char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

std::string report_to_json(const EntropyReport& report) {
  ordered_json j;
  j["law"] = report.law.describe();
  ordered_json provenance = ordered_json::object();
  for (const auto& [name, field] : report_fields(report)) {
    if (*field) {
      j[name] = (*field)->value;
      provenance[name] = provenance_name((*field)->provenance);
    } else {
      j[name] = nullptr;
    }
  }
  j["rho_tilde"] = report.rho_tilde ? ordered_json(*report.rho_tilde) : ordered_json(nullptr);
  j["provenance"] = std::move(provenance);
  if (report.error) {
    j["error"] = *report.error;
    j["message"] = report.message.value_or("");
  }
  return j.dump(2) + "\n";
}

std::string report_to_csv(const EntropyReport& report) {
  std::string header = "law";
  std::string row = csv_cell(report.law.describe());
  for (const auto& [name, field] : report_fields(report)) {
    header += ',';
    header += name;
    row += ',';
    if (*field) row += format_number((*field)->value);
  }
  header += ",rho_tilde,error\n";
  row += ',' + number_cell(report.rho_tilde) + ',' + csv_cell(report.error.value_or("")) + '\n';
  return header + row;
}

std::string trace_to_csv(const ConvergenceTrace& trace) {
  std::string out = "index,H,H_tilde,target,gap\n";
  for (const auto& pt : trace.points) {
    out += format_number(pt.index) + ',' + format_number(pt.H) + ',' + format_number(pt.H_tilde) +
           ',' + format_number(trace.target) + ',' + format_number(pt.gap) + '\n';
  }
  return out;
}

std::string trace_to_json(const ConvergenceTrace& trace) {
  ordered_json j;
  j["label"] = trace.label;
  j["target"] = trace.target;
  ordered_json points = ordered_json::array();
  for (const auto& pt : trace.points) {
    points.push_back({{"index", pt.index},
                      {"H", pt.H},
                      {"H_tilde", pt.H_tilde},
                      {"H_tilde_standardized", pt.H_tilde_standardized},
                      {"gap", pt.gap}});
  }
  j["points"] = std::move(points);
  return j.dump(2) + "\n";
}

}  // namespace rentropy
