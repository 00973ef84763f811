#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "rentropy/law_spec.hpp"
#include "rentropy/serialize.hpp"

using namespace rentropy;
using nlohmann::json;

TEST_CASE("report JSON has the flat key set") {
  const auto j = json::parse(report_to_json(entropy_report(parse_law("cauchy:a=2"))));
  for (const char* key :
       {"law", "H", "h", "H_tilde", "h_tilde", "h_hat", "h_bar", "rho_tilde", "provenance"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["law"] == "cauchy:a=2");
  CHECK(j["H"].is_null());
  CHECK(j["h_hat"].is_null());
  CHECK(j["rho_tilde"].get<double>() == 4.0);
  CHECK(j["provenance"]["h"] == "analytic");
  CHECK_FALSE(j["provenance"].contains("h_hat"));
  CHECK(j["error"] == "NoVariance");
}

TEST_CASE("values survive the JSON round trip exactly") {
  const auto report = entropy_report(parse_law("gamma:lam=2.5,a=3"));
  const auto j = json::parse(report_to_json(report));
  CHECK(j["h"].get<double>() == report.h->value);
  CHECK(j["h_tilde"].get<double>() == report.h_tilde->value);
  CHECK(j["rho_tilde"].get<double>() == *report.rho_tilde);
  CHECK_FALSE(j.contains("error"));
}

TEST_CASE("report CSV") {
  const std::string csv = report_to_csv(entropy_report(parse_law("duniform:n=8,a=1")));
  std::istringstream in(csv);
  std::string header;
  std::string row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header == "law,H,h,H_tilde,h_tilde,h_hat,h_bar,rho_tilde,error");
  CHECK(row.rfind("\"duniform:n=8,a=1\",2.0794415416798357,,", 0) == 0);
}

TEST_CASE("trace CSV and JSON") {
  const auto trace = trace_discrete_uniform(1.0, {4, 16});
  const std::string csv = trace_to_csv(trace);
  CHECK(csv.rfind("index,H,H_tilde,target,gap\n4,", 0) == 0);
  const auto j = json::parse(trace_to_json(trace));
  CHECK(j["points"].size() == 2);
  CHECK(j["points"][1]["index"].get<double>() == 16.0);
  CHECK(j["target"].get<double>() == trace.target);
}

TEST_CASE("CSV quoting") {
  CHECK(csv_cell("plain") == "plain");
  CHECK(csv_cell("a,b") == "\"a,b\"");
  CHECK(csv_cell("say \"x\",") == "\"say \"\"x\"\",\"");
}
