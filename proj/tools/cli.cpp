#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "rentropy/convergence.hpp"
#include "rentropy/entropy.hpp"
#include "rentropy/errors.hpp"
#include "rentropy/law_spec.hpp"
#include "rentropy/quantiles.hpp"
#include "rentropy/serialize.hpp"

namespace rentropy::cli {
namespace {

using nlohmann::ordered_json;

enum class Format { Default, Json, Csv };

struct Options {
  std::string format;
  std::string out_path;
  std::string spec;
  double p = 0.0;
  std::string kind;
  double bin_p = 0.5;
  double a = 1.0;
  std::vector<int> ns;
  std::vector<double> lams;
  int figure = 0;
  std::optional<double> from;
  std::optional<double> to;
  int steps = 200;
};

struct Figure {
  const char* quantity;
  Family family;
  CatalogQuantity which;
  double from;
  double to;
};

// Fig. 4 needs lam > 2 for the variance to exist.
const Figure kFigures[] = {
    {"h_tilde", Family::Gamma, CatalogQuantity::HTilde, 0.1, 50.0},
    {"h_tilde", Family::Student, CatalogQuantity::HTilde, 0.1, 50.0},
    {"h_hat", Family::Gamma, CatalogQuantity::HHat, 0.1, 50.0},
    {"h_hat", Family::Student, CatalogQuantity::HHat, 2.05, 50.0},
    {"h_bar", Family::Gamma, CatalogQuantity::HBar, 0.1, 50.0},
    {"h_bar", Family::Student, CatalogQuantity::HBar, 0.5, 50.0},
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Format parse_format(const std::string& text) {
  if (text.empty()) return Format::Default;
  if (text == "json") return Format::Json;
  if (text == "csv") return Format::Csv;
  throw UsageError("unknown format '" + text + "' (expected json or csv)");
}

std::string null_report_json(const std::string& spec, const Error& e) {
  ordered_json j;
  j["law"] = spec;
  for (const char* key : {"H", "h", "H_tilde", "h_tilde", "h_hat", "h_bar", "rho_tilde"}) {
    j[key] = nullptr;
  }
  j["provenance"] = ordered_json::object();
  j["error"] = e.kind();
  j["message"] = e.what();
  return j.dump(2) + "\n";
}

std::string null_report_csv(const std::string& spec, const Error& e) {
  return "law,H,h,H_tilde,h_tilde,h_hat,h_bar,rho_tilde,error\n" + csv_cell(spec) +
         ",,,,,,,," + e.kind() + "\n";
}

struct Output {
  std::string text;
  int code = kSuccess;
};

Output cmd_entropy(const Options& o, Format format) {
  std::optional<Law> law;
  try {
    law = parse_law(o.spec);
  } catch (const NoVarianceError& e) {
    return {format == Format::Csv ? null_report_csv(o.spec, e) : null_report_json(o.spec, e),
            kPartialResult};
  } catch (const DegenerateLawError& e) {
    return {format == Format::Csv ? null_report_csv(o.spec, e) : null_report_json(o.spec, e),
            kPartialResult};
  }
  const EntropyReport report = entropy_report(*law);
  const int code = report.error ? kPartialResult : kSuccess;
  return {format == Format::Csv ? report_to_csv(report) : report_to_json(report), code};
}

Output scalar_output(const Options& o, Format format, const char* name, double value) {
  switch (format) {
    case Format::Json: {
      ordered_json j;
      j["law"] = o.spec;
      j["p"] = o.p;
      j[name] = value;
      return {j.dump(2) + "\n"};
    }
    case Format::Csv:
      return {std::string("law,p,") + name + "\n" + csv_cell(o.spec) + "," + format_number(o.p) +
              "," + format_number(value) + "\n"};
    case Format::Default:
      break;
  }
  return {format_number(value) + "\n"};
}

Output cmd_converge(const Options& o, Format format) {
  ConvergenceTrace trace;
  if (o.kind == "binomial") {
    trace = trace_binomial(o.bin_p, o.ns.empty() ? default_ns() : o.ns);
  } else if (o.kind == "poisson") {
    trace = trace_poisson(o.lams.empty() ? default_lams() : o.lams);
  } else if (o.kind == "duniform") {
    trace = trace_discrete_uniform(o.a, o.ns.empty() ? default_ns() : o.ns);
  } else {
    throw UsageError("unknown sequence '" + o.kind + "' (expected binomial, poisson or duniform)");
  }
  return {format == Format::Json ? trace_to_json(trace) : trace_to_csv(trace)};
}

Output cmd_figure(const Options& o, Format format) {
  if (o.figure < 1 || o.figure > 6) {
    throw UsageError("unknown figure '" + std::to_string(o.figure) + "' (expected 1..6)");
  }
  const Figure& fig = kFigures[o.figure - 1];
  const double from = o.from.value_or(fig.from);
  const double to = o.to.value_or(fig.to);
  if (!(from > 0.0) || !(to > from)) throw UsageError("figure range must satisfy 0 < from < to");
  if (o.figure == 4 && !(from > 2.0)) throw UsageError("figure 4 is defined only for lam > 2");
  if (o.steps < 2) throw UsageError("--steps must be at least 2");

  std::vector<std::pair<double, double>> rows;
  for (int i = 0; i < o.steps; ++i) {
    const double lam = i + 1 == o.steps ? to : from + (to - from) * i / (o.steps - 1);
    rows.emplace_back(lam, catalog_closed_form(fig.family, lam, fig.which));
  }
  if (format == Format::Json) {
    ordered_json j;
    j["figure"] = o.figure;
    j["family"] = family_name(fig.family);
    j["quantity"] = fig.quantity;
    ordered_json points = ordered_json::array();
    for (const auto& [lam, value] : rows) points.push_back({{"lambda", lam}, {"value", value}});
    j["points"] = std::move(points);
    return {j.dump(2) + "\n"};
  }
  std::string text = "lambda,value\n";
  for (const auto& [lam, value] : rows) {
    text += format_number(lam) + ',' + format_number(value) + '\n';
  }
  return {text};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Classical and renormalized entropies of probability laws", "rentropy"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  app.add_option("--format", o.format, "Output format: json or csv");
  app.add_option("--out", o.out_path, "Write output to PATH instead of standard output");

  const char* spec_help = "Law specification, e.g. gamma:lam=3,a=1 or poisson:lam=10|std";
  auto* entropy = app.add_subcommand("entropy", "Entropy report for a law")->fallthrough();
  entropy->add_option("spec", o.spec, spec_help)->required();

  auto* quant = app.add_subcommand("quantile", "Quantile Q(p)")->fallthrough();
  quant->add_option("spec", o.spec, spec_help)->required();
  quant->add_option("p", o.p, "Probability in (0, 1)")->required();

  auto* iq = app.add_subcommand("iqnr", "Interquantile range Q(1-p) - Q(p)")->fallthrough();
  iq->add_option("spec", o.spec, spec_help)->required();
  iq->add_option("p", o.p, "Probability in (0, 1/2)")->required();

  auto* conv = app.add_subcommand("converge", "Convergence trace of renormalized entropy")
                   ->fallthrough();
  conv->add_option("kind", o.kind, "binomial, poisson or duniform")->required();
  conv->add_option("--p", o.bin_p, "Binomial success probability");
  conv->add_option("--a", o.a, "Discrete-uniform support length");
  conv->add_option("--ns", o.ns, "Comma-separated n grid")->delimiter(',');
  conv->add_option("--lams", o.lams, "Comma-separated lambda grid")->delimiter(',');

  auto* fig = app.add_subcommand("figure", "Curve data for figures 1-6")->fallthrough();
  fig->add_option("id", o.figure, "Figure number 1..6")->required();
  fig->add_option("--from", o.from, "First lambda");
  fig->add_option("--to", o.to, "Last lambda");
  fig->add_option("--steps", o.steps, "Number of grid points");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  Output result;
  try {
    const Format format = parse_format(o.format);
    if (entropy->parsed()) {
      result = cmd_entropy(o, format);
    } else if (quant->parsed()) {
      result = scalar_output(o, format, "quantile", quantile(parse_law(o.spec), o.p));
    } else if (iq->parsed()) {
      result = scalar_output(o, format, "iqnr", iqnr(parse_law(o.spec), o.p));
    } else if (conv->parsed()) {
      result = cmd_converge(o, format);
    } else {
      result = cmd_figure(o, format);
    }
  } catch (const ParseError& e) {
    err << "error: invalid law specification: " << e.what() << "\n";
    return kUsageError;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const NoVarianceError& e) {
    err << "error: " << e.kind() << ": " << e.what() << "\n";
    return kPartialResult;
  } catch (const DegenerateLawError& e) {
    err << "error: " << e.kind() << ": " << e.what() << "\n";
    return kPartialResult;
  } catch (const Error& e) {
    err << "error: " << e.kind() << ": " << e.what() << "\n";
    return kInternalError;
  }

  if (o.out_path.empty()) {
    out << result.text;
  } else {
    std::ofstream file(o.out_path, std::ios::binary);
    if (!file) {
      err << "error: cannot open '" << o.out_path << "' for writing\n";
      return kUsageError;
    }
    file << result.text;
  }
  return result.code;
}

}  // namespace rentropy::cli
