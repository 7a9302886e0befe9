#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gbv/generators.hpp"
#include "gbv/inequalities.hpp"
#include "gbv/measures.hpp"
#include "gbv/report.hpp"
#include "gbv/seqclass.hpp"
#include "gbv/series.hpp"

namespace {

using gbv::Index;
using nlohmann::json;

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kNumerical = 3 };

struct Common {
  std::string out;
  std::string format = "auto";
  std::uint64_t seed = 7;
  double tol = 1e-10;
};

struct SequenceArgs {
  std::string family = "power";
  double beta = 0.75;
  double scale = 1.0;
  int levels = 4;
  std::string input;
  std::string coeff;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--out", c.out, "Write the report to this file instead of stdout");
  sub->add_option("--format", c.format, "Report format")
      ->check(CLI::IsMember({"auto", "json", "csv"}))
      ->capture_default_str();
  sub->add_option("--seed", c.seed, "Seed for randomized suites")->capture_default_str();
  sub->add_option("--tol", c.tol, "Absolute tolerance for series values")->capture_default_str();
}

void add_sequence(CLI::App* sub, SequenceArgs& s) {
  sub->add_option("--family", s.family, "Generated coefficient family")
      ->check(CLI::IsMember({"power", "zero", "leindler"}))
      ->capture_default_str();
  sub->add_option("--beta", s.beta, "power: λ_n = scale · n^{-beta}")->capture_default_str();
  sub->add_option("--scale", s.scale, "power: leading factor")->capture_default_str();
  sub->add_option("--levels", s.levels, "leindler: number of complete blocks v_m = 2^(2^m)")
      ->capture_default_str();
  sub->add_option("--input", s.input, "CSV file with header n,value (overrides --family)")
      ->check(CLI::ExistingFile);
  sub->add_option("--coeff", s.coeff,
                  "CSV file, or family:param such as power:0.75, leindler:4, zero");
}

double parse_double(const std::string& text, const std::string& what) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw gbv::ParameterError("malformed " + what + ": " + text);
  return v;
}

gbv::CoefficientSequence make_sequence(const SequenceArgs& s) {
  if (!s.input.empty()) return gbv::load_sequence(s.input);
  if (!s.coeff.empty()) {
    const auto colon = s.coeff.find(':');
    const std::string head = s.coeff.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : s.coeff.substr(colon + 1);
    if (head == "zero") return gbv::gen_zero();
    if (head == "power" && !arg.empty()) return gbv::gen_power(parse_double(arg, "beta"), s.scale);
    if (head == "leindler" && !arg.empty()) {
      return gbv::gen_leindler(static_cast<int>(parse_double(arg, "levels")));
    }
    return gbv::load_sequence(s.coeff);
  }
  if (s.family == "zero") return gbv::gen_zero();
  if (s.family == "leindler") return gbv::gen_leindler(s.levels);
  return gbv::gen_power(s.beta, s.scale);
}

gbv::Parity parse_parity(const std::string& text) {
  return text == "sine" ? gbv::Parity::kSine : gbv::Parity::kCosine;
}

// Every option of the subcommand with its resolved value, in declaration order.
json resolved_config(const CLI::App* sub) {
  json cfg = json::object();
  cfg["subcommand"] = sub->get_name();
  for (const CLI::Option* opt : sub->get_options()) {
    const std::string key = opt->get_single_name();
    if (key.empty() || key == "help") continue;
    if (opt->count() > 0) {
      const auto res = opt->results();
      if (opt->get_expected_max() == 0) {
        cfg[key] = true;
      } else if (res.size() == 1) {
        cfg[key] = res.front();
      } else {
        cfg[key] = res;
      }
    } else if (opt->get_expected_max() == 0) {
      cfg[key] = false;
    } else if (!opt->get_default_str().empty()) {
      cfg[key] = opt->get_default_str();
    } else {
      cfg[key] = nullptr;
    }
  }
  return cfg;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw gbv::ParameterError("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void emit_json(const Common& c, const json& doc) {
  Output out(c.out);
  out.stream() << doc.dump(2) << '\n';
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 3) throw gbv::ParameterError("--x-grid expects start:stop:count");
  const double a = parse_double(parts[0], "grid start");
  const double b = parse_double(parts[1], "grid stop");
  const double count = parse_double(parts[2], "grid count");
  if (!(count >= 1.0) || count != std::floor(count) || count > 1e6) {
    throw gbv::ParameterError("--x-grid count must be an integer in [1, 1e6]");
  }
  const auto n = static_cast<std::size_t>(count);
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return xs;
}

std::vector<std::pair<double, double>> parse_pairs(const std::vector<std::string>& items) {
  std::vector<std::pair<double, double>> out;
  for (const auto& item : items) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw gbv::ParameterError("grid point must be p:gamma, got " + item);
    out.emplace_back(parse_double(item.substr(0, colon), "p"),
                     parse_double(item.substr(colon + 1), "gamma"));
  }
  return out;
}

Index default_horizon(const gbv::CoefficientSequence& seq, Index requested) {
  if (requested > 0) return std::min(requested, seq.horizon());
  return std::min<Index>(seq.horizon(), Index{1} << 18);
}

int exit_for(gbv::CheckStatus s) {
  switch (s) {
    case gbv::CheckStatus::kPass: return kOk;
    case gbv::CheckStatus::kFail: return kFailed;
    case gbv::CheckStatus::kInconclusive: return kNumerical;
  }
  return kFailed;
}

int combine(int a, int b) { return std::max(a, b); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Checks for coefficient sequences of bounded group variation and their "
               "trigonometric series"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "gbvcheck 1.0");

  Common common;
  SequenceArgs seq_args;

  // classify
  std::string class_name = "gbv";
  Index horizon = 0;
  int density = 2;
  bool reject_non_null = false;
  auto* classify = app.add_subcommand(
      "classify",
      "Certify class membership up to a horizon. GBV: Σ_{n=m}^{2m}|Δλ_n| ≤ Mλ_m; "
      "RBV: Σ_{n≥m}|Δλ_n| ≤ Mλ_m; quasimonotone: λ_{n+1} ≤ λ_n(1 + α/n); monotone: "
      "λ_{n+1} ≤ λ_n. 'all' also checks monotone ⇒ RBV ⇒ GBV and quasimonotone ⇒ GBV. "
      "Exit 1 when the class is violated or an inclusion fails.");
  add_common(classify, common);
  add_sequence(classify, seq_args);
  classify->add_option("--class", class_name, "Class to check")
      ->check(CLI::IsMember({"monotone", "quasimonotone", "rbv", "gbv", "all"}))
      ->capture_default_str();
  classify->add_option("--horizon", horizon, "Last index examined (default min(horizon, 2^18))");
  classify->add_option("--density", density, "Ladder points per octave")->capture_default_str();
  classify->add_flag("--reject-non-null", reject_non_null,
                     "Treat sequences that do not tend to zero as errors instead of warnings");

  // generate
  Index max_n = 0;
  auto* generate = app.add_subcommand(
      "generate", "Write λ_1..λ_N of a family in the n,value CSV format (N ≤ 10^6).");
  add_common(generate, common);
  add_sequence(generate, seq_args);
  generate->add_option("--max-n", max_n, "Number of coefficients to write")->required();

  // eval
  std::string parity = "cosine";
  std::string x_grid = "0.1:3.14159:16";
  std::string strategy = "accelerated";
  Index direct_terms = 1024;
  double constant_term = 0.0;
  std::optional<double> gbv_constant;
  auto* eval = app.add_subcommand(
      "eval",
      "Evaluate f(x) = b_0 + Σ λ_n cos nx or g(x) = Σ λ_n sin nx on a grid with certified "
      "error bounds (summation by parts tail bounds for sequences of bounded variation).");
  add_common(eval, common);
  add_sequence(eval, seq_args);
  eval->add_option("--parity", parity, "Series type")
      ->check(CLI::IsMember({"cosine", "sine"}))
      ->capture_default_str();
  eval->add_option("--x-grid", x_grid, "start:stop:count, inclusive, inside (−2π, 2π]")
      ->capture_default_str();
  eval->add_option("--strategy", strategy, "accelerated: certified; direct: partial sum")
      ->check(CLI::IsMember({"accelerated", "direct"}))
      ->capture_default_str();
  eval->add_option("--direct-terms", direct_terms, "Terms of the direct partial sum")
      ->capture_default_str();
  eval->add_option("--constant", constant_term, "Constant term b_0 of the cosine series")
      ->capture_default_str();
  eval->add_option("--gbv-constant", gbv_constant,
                   "GBV constant M for the dyadic tail bound M Σ_j λ_{2^j n}");

  // criterion
  std::string variant = "eq5";
  double p = 2.0;
  double gamma = 0.0;
  Index cutoff = 0;
  auto* criterion = app.add_subcommand(
      "criterion",
      "Block sums of Σ n^{p+pγ−2} λ_n^p (eq5; eq6 is γ = 0), or the same with λ_n replaced by "
      "Σ_{k≥n}|Δλ_k| (eq3) or Σ_{k≥n} λ_k/k (eq4). For GBV coefficients, convergence of eq5 is "
      "equivalent to x^{−γ}φ(x) ∈ L^p. Exit 1 when the sum diverges.");
  add_common(criterion, common);
  add_sequence(criterion, seq_args);
  criterion->add_option("--variant", variant, "Sum to evaluate")
      ->check(CLI::IsMember({"eq3", "eq4", "eq5", "eq6"}))
      ->capture_default_str();
  criterion->add_option("--p", p, "Exponent, 1 < p < ∞")->capture_default_str();
  criterion->add_option("--gamma", gamma, "Weight exponent, 1/p − 1 < γ < 1/p")
      ->capture_default_str();
  criterion->add_option("--horizon", cutoff, "Summation cutoff N (default min(horizon, 2^20))");

  // norm
  double x_min = 1e-4;
  bool ladder = false;
  auto* norm = app.add_subcommand(
      "norm",
      "Weighted norm (∫_{x_min}^{π} |x^{−γ} φ(x)|^p dx)^{1/p} of the cosine or sine series; "
      "--ladder reports the growth as x_min = 10^{−4k} shrinks, the integral side of "
      "x^{−γ}φ(x) ∈ L^p ⇔ Σ n^{p+pγ−2} λ_n^p < ∞ for GBV coefficients.");
  add_common(norm, common);
  add_sequence(norm, seq_args);
  norm->add_option("--parity", parity, "Series type")
      ->check(CLI::IsMember({"cosine", "sine"}))
      ->capture_default_str();
  norm->add_option("--p", p, "Exponent, 1 < p < ∞")->capture_default_str();
  norm->add_option("--gamma", gamma, "Weight exponent, 1/p − 1 < γ < 1/p")->capture_default_str();
  norm->add_option("--x-min", x_min, "Lower cutoff of the integral")->capture_default_str();
  norm->add_flag("--ladder", ladder, "Report the cutoff ladder instead of one norm");

  // modulus
  double t = 0.5;
  int grid = 8;
  auto* modulus = app.add_subcommand(
      "modulus",
      "Integral modulus of continuity ω(f, t)_p = sup_{0<h≤t} (∫_0^{2π} |f(x+h) − f(x)|^p "
      "dx)^{1/p}, taken over h = t 2^{−i/2}, i < grid.");
  add_common(modulus, common);
  add_sequence(modulus, seq_args);
  modulus->add_option("--parity", parity, "Series type")
      ->check(CLI::IsMember({"cosine", "sine"}))
      ->capture_default_str();
  modulus->add_option("--p", p, "Exponent, 1 < p < ∞")->capture_default_str();
  modulus->add_option("--t", t, "Step bound t > 0")->capture_default_str();
  modulus->add_option("--grid", grid, "Number of shifts examined")->capture_default_str();

  // rhs7
  Index n_index = 8;
  auto* rhs7 = app.add_subcommand(
      "rhs7",
      "Right side of the modulus estimate ω(f, 1/n)_p ≤ C(n^{−1}(Σ_{k<n} k^{2p−2}λ_k^p)^{1/p} + "
      "(Σ_{k≥n} k^{p−2}λ_k^p)^{1/p}) for GBV coefficients.");
  add_common(rhs7, common);
  add_sequence(rhs7, seq_args);
  rhs7->add_option("--p", p, "Exponent, 1 < p < ∞")->capture_default_str();
  rhs7->add_option("--n", n_index, "Index n ≥ 2")->capture_default_str();

  // verify
  std::string ineq = "eq8";
  std::size_t count = 1000;
  std::vector<Index> n_list;
  std::optional<double> M;
  double ratio_cap = 64.0;
  auto* verify = app.add_subcommand(
      "verify",
      "Check an inequality on concrete instances. eq8: Σ μ_n(Σ_{k≤n} α_k)^p ≤ p^p Σ "
      "μ_n^{1−p}(Σ_{k≥n} μ_k)^p α_n^p, eq9: the dual with head and tail sums swapped (random "
      "instances); lemma3: Σ_{j≥1} λ_{2^j n} ≤ 4M Σ_{k≥n} λ_k/k for GBV λ; lemma4: "
      "n^{1−1/p} Σ_{k>[n/2]} λ_k/k ≤ C(n^{−1}(Σ_{k<n} k^{2p−2}λ_k^p)^{1/p} + "
      "(Σ_{k≥n} k^{p−2}λ_k^p)^{1/p}) as a bounded ratio; inclusion: monotone ⇒ RBV ⇒ GBV and "
      "quasimonotone ⇒ GBV on random sequences. Exit 0 all pass, 1 any fail, 3 inconclusive.");
  add_common(verify, common);
  add_sequence(verify, seq_args);
  verify->add_option("--ineq", ineq, "Inequality to check")
      ->check(CLI::IsMember({"eq8", "eq9", "lemma3", "lemma4", "inclusion"}))
      ->capture_default_str();
  verify->add_option("--count", count, "Random instances (eq8, eq9, inclusion)")
      ->capture_default_str();
  verify->add_option("--n", n_list, "Indices (lemma3 default 1..1024 dyadic, lemma4 8..512)");
  verify->add_option("--M", M, "GBV constant for lemma3 (default: certified sup ratio)");
  verify->add_option("--p", p, "Exponent for lemma4")->capture_default_str();
  verify->add_option("--ratio-cap", ratio_cap, "lemma4 ratio bound")->capture_default_str();

  // harness
  std::string theorem = "3";
  std::vector<std::string> pg_grid;
  std::vector<Index> n_set;
  double harness_cap = 50.0;
  auto* harness = app.add_subcommand(
      "harness",
      "Theorem-level consistency checks. 1.3: for GBV λ, x^{−γ}φ(x) ∈ L^p ⇔ Σ n^{p+pγ−2} "
      "λ_n^p < ∞ (criterion verdict against the norm cutoff ladder); 2.3: for GBV λ with "
      "Σ n^{p−2}λ_n^p < ∞, ω(f, 1/n)_p is bounded by the rhs7 expression (bounded ratio scan); "
      "3: the sequence with blocks v_m = 2^(2^m) is GBV and quasimonotone but not RBV, and "
      "Σ n^{p+pγ−2} λ_n^p converges for γ < 1/p.");
  add_common(harness, common);
  add_sequence(harness, seq_args);
  harness->add_option("--theorem", theorem, "Statement to exercise")
      ->check(CLI::IsMember({"1.3", "2.3", "3"}))
      ->capture_default_str();
  harness->add_option("--p", p, "Exponent (1.3, 2.3)")->capture_default_str();
  harness->add_option("--gamma", gamma, "Weight exponent (1.3)")->capture_default_str();
  harness->add_option("--grid", pg_grid, "p:gamma points for theorem 3 (default 2:0.25)");
  harness->add_option("--n-set", n_set, "n values for 2.3 (default 8 16 32 64 128 256)");
  harness->add_option("--ratio-cap", harness_cap, "Ratio bound for 2.3")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    json doc;
    doc["config"] = resolved_config(sub);
    const auto seq = make_sequence(seq_args);
    const auto format = common.format;
    int code = kOk;

    if (sub == classify) {
      gbv::ClassifyOptions opts;
      opts.density = density;
      opts.non_null = reject_non_null ? gbv::NonNullPolicy::kReject : gbv::NonNullPolicy::kWarn;
      const Index H = default_horizon(seq, horizon);
      doc["sequence"] = seq.describe();
      if (class_name == "all") {
        const auto rep = gbv::inclusion_report(seq, H, opts);
        doc["report"] = gbv::to_json(rep);
        code = rep.consistent ? kOk : kFailed;
      } else {
        const auto cert = gbv::classify(seq, gbv::parse_class_id(class_name), H, opts);
        if (format == "csv") {
          Output out(common.out);
          out.stream() << "m,ratio\n";
          for (const auto& pt : cert.ladder) out.stream() << pt.m << ',' << fmt(pt.ratio) << '\n';
          return cert.verdict == gbv::Verdict::kMember ? kOk : kFailed;
        }
        doc["certificate"] = gbv::to_json(cert);
        if (!cert.warnings.empty()) doc["warnings"] = cert.warnings;
        code = cert.verdict == gbv::Verdict::kMember ? kOk : kFailed;
      }
      emit_json(common, doc);
      return code;
    }

    if (sub == generate) {
      if (max_n > gbv::kMaxDenseLength) {
        throw gbv::ParameterError("--max-n above 1000000 is refused");
      }
      if (max_n > seq.horizon()) throw gbv::ParameterError("--max-n exceeds the sequence length");
      if (format == "json") {
        std::vector<double> values(max_n);
        seq.fill(1, values);
        doc["sequence"] = seq.describe();
        json arr = json::array();
        for (double v : values) arr.push_back(gbv::json_number(v));
        doc["values"] = arr;
        emit_json(common, doc);
      } else {
        Output out(common.out);
        gbv::write_sequence_csv(seq, max_n, out.stream());
      }
      return kOk;
    }

    if (sub == eval) {
      gbv::SeriesSpec spec(seq, parse_parity(parity));
      spec.strategy = strategy == "direct" ? gbv::Strategy::kDirect : gbv::Strategy::kAccelerated;
      spec.direct_terms = direct_terms;
      spec.constant_term = constant_term;
      spec.gbv_constant = gbv_constant;
      spec.tolerance = common.tol;
      const auto xs = parse_grid(x_grid);
      const auto values = gbv::eval_series_batch(spec, xs, common.tol);
      if (format == "json") {
        json rows = json::array();
        for (std::size_t i = 0; i < xs.size(); ++i) {
          rows.push_back({{"x", xs[i]},
                          {"value", gbv::json_number(values[i].value)},
                          {"err", gbv::json_number(values[i].err)},
                          {"terms", values[i].terms},
                          {"method", gbv::to_string(values[i].method)}});
        }
        doc["sequence"] = seq.describe();
        doc["values"] = rows;
        emit_json(common, doc);
      } else {
        Output out(common.out);
        out.stream() << "x,value,err\n";
        for (std::size_t i = 0; i < xs.size(); ++i) {
          out.stream() << fmt(xs[i]) << ',' << fmt(values[i].value) << ',' << fmt(values[i].err)
                       << '\n';
        }
      }
      return kOk;
    }

    if (sub == criterion) {
      const auto params = gbv::MeasureParams::make(p, gamma);
      Index N = cutoff;
      if (N == 0) {
        N = seq.model().finitely_supported() ? seq.horizon()
                                              : std::min<Index>(seq.horizon(), Index{1} << 20);
      }
      const auto res = gbv::criterion_sum(seq, params, gbv::parse_criterion_variant(variant), N);
      code = res.verdict == gbv::CriterionVerdict::kConverges  ? kOk
             : res.verdict == gbv::CriterionVerdict::kDiverges ? kFailed
                                                               : kNumerical;
      if (format == "csv") {
        Output out(common.out);
        out.stream() << "j,block_sum\n";
        for (std::size_t j = 0; j < res.block_sums.size(); ++j) {
          out.stream() << j << ',' << fmt(res.block_sums[j]) << '\n';
        }
        return code;
      }
      doc["sequence"] = seq.describe();
      doc["result"] = gbv::to_json(res);
      emit_json(common, doc);
      return code;
    }

    if (sub == norm) {
      auto params = gbv::MeasureParams::make(p, gamma);
      params.x_min = x_min;
      gbv::SeriesSpec spec(seq, parse_parity(parity));
      spec.tolerance = common.tol;
      doc["sequence"] = seq.describe();
      doc["params"] = gbv::to_json(params);
      if (ladder) {
        const auto lad = gbv::norm_ladder(spec, params);
        if (format == "csv") {
          Output out(common.out);
          out.stream() << "x_min,increment,cumulative\n";
          for (std::size_t i = 0; i < lad.x_min.size(); ++i) {
            out.stream() << fmt(lad.x_min[i]) << ',' << fmt(lad.increments[i]) << ','
                         << fmt(lad.cumulative[i]) << '\n';
          }
          return kOk;
        }
        doc["ladder"] = gbv::to_json(lad);
      } else {
        doc["result"] = gbv::to_json(gbv::weighted_lp_norm(spec, params));
      }
      emit_json(common, doc);
      return kOk;
    }

    if (sub == modulus) {
      if (!(p >= 1.0) || !std::isfinite(p)) throw gbv::ParameterError("--p must be finite, >= 1");
      if (!(t > 0.0) || t > std::numbers::pi) throw gbv::ParameterError("--t must lie in (0, π]");
      if (grid < 8) throw gbv::ParameterError("--grid must be at least 8");
      gbv::SeriesSpec spec(seq, parse_parity(parity));
      spec.tolerance = common.tol;
      const auto res = gbv::modulus_lp(spec, p, t, grid);
      if (format == "csv") {
        Output out(common.out);
        out.stream() << "h,norm\n";
        for (std::size_t i = 0; i < res.hs.size(); ++i) {
          out.stream() << fmt(res.hs[i]) << ',' << fmt(res.values[i]) << '\n';
        }
        return kOk;
      }
      doc["sequence"] = seq.describe();
      doc["result"] = gbv::to_json(res);
      emit_json(common, doc);
      return kOk;
    }

    if (sub == rhs7) {
      if (!(p > 1.0) || !std::isfinite(p)) throw gbv::ParameterError("--p must lie in (1, ∞)");
      if (n_index < 2) throw gbv::ParameterError("--n must be at least 2");
      doc["sequence"] = seq.describe();
      doc["result"] = gbv::to_json(gbv::rhs_eq7(seq, p, n_index));
      emit_json(common, doc);
      return kOk;
    }

    if (sub == verify) {
      if (ineq == "eq8" || ineq == "eq9") {
        const auto rep =
            gbv::run_hardy_littlewood_suite(gbv::parse_inequality_id(ineq), count, common.seed);
        doc["suite"] = gbv::to_json(rep);
        code = rep.failed > 0 ? kFailed : rep.inconclusive > 0 ? kNumerical : kOk;
      } else if (ineq == "inclusion") {
        const auto rep = gbv::run_inclusion_suite(count, common.seed);
        doc["suite"] = gbv::to_json(rep);
        code = rep.failed > 0 ? kFailed : rep.inconclusive > 0 ? kNumerical : kOk;
      } else if (ineq == "lemma3") {
        double constant = 0.0;
        if (M) {
          constant = *M;
        } else {
          const Index H = default_horizon(seq, 0);
          const auto cert = gbv::classify(seq, gbv::ClassId::kGbv, H);
          if (cert.verdict != gbv::Verdict::kMember) {
            throw gbv::PreconditionError("sequence is not certified GBV up to " +
                                         std::to_string(H));
          }
          constant = cert.sup_ratio;
        }
        if (n_list.empty()) {
          for (Index n = 1; n <= 1024; n *= 2) n_list.push_back(n);
        }
        json reports = json::array();
        for (Index n : n_list) {
          const auto r = gbv::verify_lemma3(seq, n, constant);
          json item = gbv::to_json(r);
          item["n"] = n;
          reports.push_back(item);
          code = combine(code, exit_for(r.status));
        }
        doc["sequence"] = seq.describe();
        doc["M"] = constant;
        doc["reports"] = reports;
      } else {
        if (n_list.empty()) {
          for (Index n = 8; n <= 512; n *= 2) n_list.push_back(n);
        }
        json reports = json::array();
        std::vector<double> xs, ys;
        double max_ratio = 0.0;
        for (Index n : n_list) {
          const auto r = gbv::verify_lemma4(seq, p, n, ratio_cap);
          json item = gbv::to_json(r);
          item["n"] = n;
          reports.push_back(item);
          code = combine(code, exit_for(r.status));
          if (r.ratio && *r.ratio > 0.0) {
            xs.push_back(std::log(static_cast<double>(n)));
            ys.push_back(std::log(*r.ratio));
            max_ratio = std::max(max_ratio, *r.ratio);
          }
        }
        doc["sequence"] = seq.describe();
        doc["reports"] = reports;
        doc["max_ratio"] = max_ratio;
        doc["slope"] = xs.size() >= 2 ? gbv::fit_line(xs, ys).slope : 0.0;
      }
      doc["status"] = code == kOk ? "pass" : code == kFailed ? "fail" : "inconclusive";
      emit_json(common, doc);
      return code;
    }

    if (sub == harness) {
      if (theorem == "3") {
        auto pts = parse_pairs(pg_grid);
        if (pts.empty()) pts = {{2.0, 0.25}};
        const auto rep = gbv::harness_theorem3(seq_args.levels, pts);
        doc["report"] = gbv::to_json(rep);
        code = exit_for(rep.status);
      } else if (theorem == "1.3") {
        const auto rep = gbv::harness_theorem13(seq, gbv::MeasureParams::make(p, gamma));
        doc["sequence"] = seq.describe();
        doc["report"] = gbv::to_json(rep);
        code = rep.verdict == gbv::HarnessVerdict::kAgree      ? kOk
               : rep.verdict == gbv::HarnessVerdict::kDisagree ? kFailed
                                                               : kNumerical;
      } else {
        if (n_set.empty()) n_set = {8, 16, 32, 64, 128, 256};
        const auto rep = gbv::harness_theorem23(seq, p, n_set, harness_cap);
        doc["sequence"] = seq.describe();
        doc["report"] = gbv::to_json(rep);
        code = rep.pass ? kOk : kFailed;
      }
      emit_json(common, doc);
      return code;
    }
  } catch (const gbv::NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << " (achieved " << e.achieved() << ")\n";
    return kNumerical;
  } catch (const gbv::LoadError& e) {
    std::cerr << "load error: " << e.what() << '\n';
    return kUsage;
  } catch (const gbv::ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return kUsage;
  } catch (const gbv::OutOfRangeError& e) {
    std::cerr << "out of range: " << e.what() << '\n';
    return kUsage;
  } catch (const gbv::PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumerical;
  }
  return kOk;
}
