// Command-line surface for the production-matrix engine: sequences and
// generating functions from rules or built-ins, Dyck path statistics, and
// the verification suites.

#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "prodmat/catalog.hpp"
#include "prodmat/closed_forms.hpp"
#include "prodmat/dyck.hpp"
#include "prodmat/json_io.hpp"
#include "prodmat/production_matrix.hpp"
#include "prodmat/rule_parser.hpp"
#include "prodmat/verify.hpp"

namespace {

using namespace prodmat;
using nlohmann::json;

// Exit codes: 0 success, 1 verification failure, 2 rule parse error,
// 3 unknown name, 4 invalid argument.
constexpr int kOk = 0;
constexpr int kVerifyFailure = 1;
constexpr int kParseError = 2;
constexpr int kUnknownName = 3;
constexpr int kInvalidArgument = 4;

class CliError : public std::runtime_error {
 public:
  CliError(int code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  int code() const { return code_; }

 private:
  int code_;
};

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

// --set targets: x<k>, y<k>, x*, y*, or a named scalar.
Substitution parse_sets(const std::vector<std::string>& sets) {
  Substitution sub;
  for (const std::string& item : sets) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == item.size())
      throw CliError(kInvalidArgument,
                     "bad --set '" + item + "': expected target=value");
    std::string target = item.substr(0, eq);
    std::string value = item.substr(eq + 1);

    Polynomial poly;
    if (all_digits(value) || (value.size() > 1 && value[0] == '-' &&
                              all_digits(value.substr(1)))) {
      poly = Polynomial::constant(BigInt(value));
    } else {
      try {
        poly = Polynomial::parse(value);
      } catch (const std::invalid_argument& e) {
        throw CliError(kInvalidArgument,
                       "bad --set value '" + value + "': " + e.what());
      }
    }

    try {
      if (target == "x*") {
        sub.set_all(VarFamily::X, std::move(poly));
      } else if (target == "y*") {
        sub.set_all(VarFamily::Y, std::move(poly));
      } else if (target.size() > 1 && (target[0] == 'x' || target[0] == 'y') &&
                 all_digits(target.substr(1))) {
        unsigned idx = static_cast<unsigned>(std::stoul(target.substr(1)));
        sub.set(target[0] == 'x' ? VarId::x(idx) : VarId::y(idx),
                std::move(poly));
      } else {
        sub.set(VarId::named(target), std::move(poly));
      }
    } catch (const std::invalid_argument& e) {
      throw CliError(kInvalidArgument,
                     "bad --set target '" + target + "': " + e.what());
    }
  }
  return sub;
}

SuccessionRule load_rule(const std::string& builtin,
                         const std::string& rule_file) {
  if (!builtin.empty() && !rule_file.empty())
    throw CliError(kInvalidArgument, "give either --builtin or --rule");
  if (!builtin.empty()) {
    try {
      return builtin_rule(builtin);
    } catch (const std::invalid_argument& e) {
      throw CliError(kUnknownName, e.what());
    }
  }
  if (rule_file.empty())
    throw CliError(kInvalidArgument, "one of --builtin or --rule is required");
  std::ifstream in(rule_file);
  if (!in)
    throw CliError(kInvalidArgument, "cannot open rule file '" + rule_file + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_rule(buffer.str());
  } catch (const RuleParseError& e) {
    throw CliError(kParseError, rule_file + ":" + e.what());
  }
}

json params_json(std::initializer_list<std::pair<std::string, json>> kv) {
  json out = json::object();
  for (const auto& [k, v] : kv) out[k] = v;
  return out;
}

void print_poly_list(const std::vector<Polynomial>& values,
                     const std::string& format, const std::string& command,
                     const json& params) {
  if (format == "json") {
    json result = json::array();
    for (const auto& p : values) result.push_back(to_json(p));
    json doc{{"command", command}, {"params", params}, {"result", result}};
    std::cout << doc.dump(2) << "\n";
  } else if (format == "csv") {
    for (std::size_t n = 0; n < values.size(); ++n)
      std::cout << n << "," << values[n].str() << "\n";
  } else {
    for (std::size_t n = 0; n < values.size(); ++n)
      std::cout << (n ? ", " : "") << values[n].str();
    std::cout << "\n";
  }
}

int cmd_seq(const std::string& builtin, const std::string& rule_file,
            unsigned terms, const std::vector<std::string>& sets,
            const std::string& format) {
  if (terms == 0)
    throw CliError(kInvalidArgument, "--terms must be at least 1");
  SuccessionRule rule = load_rule(builtin, rule_file);
  Substitution sub = parse_sets(sets);
  unsigned size =
      static_cast<unsigned>(labels_within_depth(rule, terms - 1).size());
  ProductionMatrix matrix = rule_to_matrix(rule, size).substituted(sub);
  auto seq = sequence(matrix, terms - 1);
  print_poly_list(seq, format, "seq",
                  params_json({{"source", builtin.empty() ? rule_file : builtin},
                               {"terms", terms}}));
  return kOk;
}

PowerSeries build_form(const std::string& form, unsigned order) {
  auto split = form.find(':');
  std::string head = form.substr(0, split);
  std::string tail = split == std::string::npos ? "" : form.substr(split + 1);

  if (head == "catalan") return catalan_series(order);
  if (head == "f0") return f0_series(order);
  if (head == "g1") return g1_series(order);
  if (head == "fk" || head == "gn") {
    if (!all_digits(tail))
      throw CliError(kInvalidArgument,
                     "form '" + form + "' needs a positive index");
    unsigned idx = static_cast<unsigned>(std::stoul(tail));
    if (idx == 0)
      throw CliError(kInvalidArgument,
                     head + " index must be at least 1");
    if (head == "fk") return fk_series(idx, order);
    return gn_series(idx, order);
  }
  if (head == "matrix") {
    SuccessionRule rule = load_rule(tail, "");
    unsigned size =
        static_cast<unsigned>(labels_within_depth(rule, order).size());
    return gf_series(rule_to_matrix(rule, size), order);
  }
  throw CliError(kUnknownName, "unknown form '" + form + "'");
}

int cmd_gf(const std::string& form, unsigned order,
           const std::vector<std::string>& sets, const std::string& format) {
  PowerSeries series = build_form(form, order).substituted(parse_sets(sets));
  print_poly_list(series.coefficients(), format, "gf",
                  params_json({{"form", form}, {"order", order}}));
  return kOk;
}

std::string join_list(const std::vector<unsigned>& v) {
  std::string out;
  for (unsigned x : v) {
    if (!out.empty()) out += ";";
    out += std::to_string(x);
  }
  return out;
}

std::string join_map(const std::map<unsigned, unsigned>& m) {
  std::string out;
  for (const auto& [k, v] : m) {
    if (!out.empty()) out += ";";
    out += std::to_string(k) + ":" + std::to_string(v);
  }
  return out;
}

int cmd_paths(unsigned n, bool with_stats, bool summary,
              const std::string& format) {
  if (n > kDyckEnumerationLimit)
    throw CliError(kInvalidArgument,
                   "--n exceeds the enumeration limit of " +
                       std::to_string(kDyckEnumerationLimit));
  if (summary) {
    if (n == 0)
      throw CliError(kInvalidArgument, "--summary needs --n of at least 1");
    Polynomial omega = weighted_sum(n, PathStatistic::Omega);
    Polynomial high_peak = weighted_sum(n, PathStatistic::HighPeak);
    Polynomial rises = weighted_sum(n, PathStatistic::RiseHeight);
    if (format == "json") {
      json doc{{"command", "paths"},
               {"params", params_json({{"n", n}, {"summary", true}})},
               {"result",
                {{"omega", to_json(omega)},
                 {"high_peak", to_json(high_peak)},
                 {"rise_height", to_json(rises)}}}};
      std::cout << doc.dump(2) << "\n";
    } else if (format == "csv") {
      std::cout << "omega," << omega.str() << "\n"
                << "high_peak," << high_peak.str() << "\n"
                << "rise_height," << rises.str() << "\n";
    } else {
      std::cout << "omega: " << omega.str() << "\n"
                << "high_peak: " << high_peak.str() << "\n"
                << "rise_height: " << rises.str() << "\n";
    }
    return kOk;
  }

  if (format == "json") {
    json rows = json::array();
    enumerate_paths(n, [&rows, with_stats](const DyckPath& p) {
      json row{{"word", p.word()}};
      if (with_stats) {
        PathStats st = path_stats(p);
        row["rise_heights"] = st.rise_heights;
        row["peak_heights"] = st.peak_heights;
        json segs = json::object();
        for (const auto& [m, c] : st.segment_counts)
          segs[std::to_string(m)] = c;
        row["s_counts"] = segs;
        row["contacts"] = st.contacts;
        row["excursions"] = st.excursions;
        row["final_descent"] = st.final_descent;
        row["double_rises"] = st.double_rises;
      }
      rows.push_back(std::move(row));
    });
    json doc{{"command", "paths"},
             {"params", params_json({{"n", n}, {"stats", with_stats}})},
             {"result", rows}};
    std::cout << doc.dump(2) << "\n";
    return kOk;
  }

  if (with_stats)
    std::cout << "word,rise_heights,peak_heights,s_counts,contacts,"
                 "excursions,final_descent,double_rises\n";
  enumerate_paths(n, [with_stats](const DyckPath& p) {
    if (!with_stats) {
      std::cout << p.word() << "\n";
      return;
    }
    PathStats st = path_stats(p);
    std::cout << p.word() << "," << join_list(st.rise_heights) << ","
              << join_list(st.peak_heights) << "," << join_map(st.segment_counts)
              << "," << st.contacts << "," << st.excursions << ","
              << st.final_descent << "," << st.double_rises << "\n";
  });
  return kOk;
}

int cmd_matrix_show(const std::string& builtin, const std::string& rule_file,
                    unsigned size, const std::vector<std::string>& sets,
                    const std::string& format) {
  if (size == 0) throw CliError(kInvalidArgument, "--size must be at least 1");
  SuccessionRule rule = load_rule(builtin, rule_file);
  Substitution sub = parse_sets(sets);
  std::vector<std::vector<Polynomial>> window;
  try {
    window = truncate(rule_to_matrix(rule, size).substituted(sub), size);
  } catch (const std::runtime_error& e) {
    throw CliError(kInvalidArgument, e.what());
  }

  if (format == "json") {
    json rows = json::array();
    for (const auto& row : window)
      for (const auto& entry : row) rows.push_back(entry.str());
    json doc{{"command", "matrix show"},
             {"params",
              params_json({{"source", builtin.empty() ? rule_file : builtin},
                           {"size", size}})},
             {"result", rows}};
    std::cout << doc.dump(2) << "\n";
    return kOk;
  }

  std::vector<std::size_t> widths(size, 0);
  for (unsigned j = 0; j < size; ++j)
    for (unsigned i = 0; i < size; ++i)
      widths[j] = std::max(widths[j], window[i][j].str().size());
  for (unsigned i = 0; i < size; ++i) {
    std::cout << "[ ";
    for (unsigned j = 0; j < size; ++j) {
      std::string s = window[i][j].str();
      std::cout << s << std::string(widths[j] - s.size(), ' ')
                << (j + 1 < size ? "  " : " ");
    }
    std::cout << "]\n";
  }
  return kOk;
}

int cmd_verify(const std::string& suite, const VerifyOptions& opt) {
  std::vector<CheckResult> results;
  try {
    results = verify_suite(suite, opt);
  } catch (const std::invalid_argument& e) {
    throw CliError(kUnknownName, e.what());
  }
  unsigned failures = 0;
  for (const auto& res : results) {
    std::cout << (res.pass ? "PASS" : "FAIL") << ": " << res.name;
    if (!res.detail.empty()) std::cout << " [" << res.detail << "]";
    std::cout << "\n";
    if (!res.pass) ++failures;
  }
  std::cout << results.size() - failures << "/" << results.size()
            << " checks passed\n";
  return failures == 0 ? kOk : kVerifyFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weighted succession rules, parametric production matrices and "
               "Dyck path statistics"};
  app.require_subcommand(1);

  std::string builtin, rule_file, format = "text", form, suite = "all";
  std::vector<std::string> sets;
  unsigned terms = 8, order = 8, size = 6, n = 4;
  bool with_stats = false, summary = false;
  VerifyOptions vopt;

  CLI::App* seq = app.add_subcommand("seq", "sequence defined by a rule");
  seq->add_option("--builtin", builtin, "built-in rule name");
  seq->add_option("--rule", rule_file, "rule file in the DSL");
  seq->add_option("--terms", terms, "number of terms to print");
  seq->add_option("--set", sets, "substitution target=value");
  seq->add_option("--format", format, "text, csv or json");

  CLI::App* gf = app.add_subcommand("gf", "generating function series");
  gf->add_option("--form", form,
                 "catalan, f0, g1, fk:<k>, gn:<n> or matrix:<builtin>")
      ->required();
  gf->add_option("--order", order, "series truncation order");
  gf->add_option("--set", sets, "substitution target=value");
  gf->add_option("--format", format, "text, csv or json");

  CLI::App* paths = app.add_subcommand("paths", "enumerate Dyck paths");
  paths->add_option("--n", n, "semilength")->required();
  paths->add_flag("--stats", with_stats, "include per-path statistics");
  paths->add_flag("--summary", summary, "print the three weighted sums");
  paths->add_option("--format", format, "text, csv or json");

  CLI::App* matrix = app.add_subcommand("matrix", "matrix operations");
  CLI::App* show = matrix->add_subcommand("show", "render a truncation");
  show->add_option("--builtin", builtin, "built-in rule name");
  show->add_option("--rule", rule_file, "rule file in the DSL");
  show->add_option("--size", size, "truncation size");
  show->add_option("--set", sets, "substitution target=value");
  show->add_option("--format", format, "text or json");
  matrix->require_subcommand(1);

  CLI::App* verify = app.add_subcommand("verify", "run verification suites");
  verify->add_option("--suite", suite,
                     "oracle, equi, border, identities, catalog or all");
  verify->add_option("--n-max", vopt.n_max, "largest semilength");
  verify->add_option("--order", vopt.order, "series order for residuals");
  verify->add_option("--trials", vopt.trials, "random border instances");
  verify->add_option("--seed", vopt.seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalidArgument;
  }

  try {
    if (format != "text" && format != "csv" && format != "json")
      throw CliError(kInvalidArgument, "unknown format '" + format + "'");
    if (seq->parsed())
      return cmd_seq(builtin, rule_file, terms, sets, format);
    if (gf->parsed()) return cmd_gf(form, order, sets, format);
    if (paths->parsed()) return cmd_paths(n, with_stats, summary, format);
    if (matrix->parsed())
      return cmd_matrix_show(builtin, rule_file, size, sets, format);
    if (verify->parsed()) return cmd_verify(suite, vopt);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalidArgument;
  }
  return kOk;
}
