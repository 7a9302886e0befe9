#include "gbv/generators.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace gbv {

namespace {

// ---------------------------------------------------------------------------------------------
// Power family

class PowerModel final : public SequenceModel {
 public:
  PowerModel(double beta, double scale) : beta_(beta), scale_(scale) { prepare_closed_form(); }

  SequenceKind kind() const override { return SequenceKind::kRuleBased; }
  std::string name() const override { return "power"; }
  nlohmann::json describe() const override {
    return {{"family", "power"}, {"beta", beta_}, {"scale", scale_}};
  }
  Index horizon() const override { return kMaxIndex; }
  double value(Index n) const override {
    if (beta_ == 0.0) return scale_;
    if (beta_ == 1.0) return scale_ / static_cast<double>(n);
    return scale_ * std::pow(static_cast<double>(n), -beta_);
  }
  Index run_end(Index) const override { return kMaxIndex; }
  bool completely_monotone() const override { return beta_ > 0.0; }
  bool declared_null() const override { return beta_ > 0.0; }

  std::optional<Enclosure> range_sum(Index a, Index b, double s, double q) const override {
    return power_sum(a, b, s - q * beta_).scaled(std::pow(scale_, q));
  }
  std::optional<Enclosure> tail_sum(Index m, double s, double q) const override {
    auto t = power_sum_to_infinity(std::max<Index>(m, 1), s - q * beta_);
    if (!t) return std::nullopt;
    return t->scaled(std::pow(scale_, q));
  }
  std::optional<Enclosure> variation_beyond_horizon() const override {
    return Enclosure::exact(beta_ > 0.0 ? value(kMaxIndex) : 0.0);
  }
  std::optional<DecayEnvelope> envelope(Index) const override {
    DecayEnvelope env;
    env.theta = beta_;
    env.lam_coef = scale_;
    env.var_coef = beta_ > 0.0 ? scale_ : 0.0;
    env.tail_coef = beta_ > 0.0 ? scale_ * (1.0 + 1.0 / beta_)
                                : std::numeric_limits<double>::infinity();
    return env;
  }

  std::optional<ClosedFormValue> series_closed_form(Parity parity, double x) const override {
    if (!(x > 0.0) || x > std::numbers::pi) return std::nullopt;
    if (beta_ == 1.0) {
      // Σ cos(nx)/n = -log(2 sin(x/2)),  Σ sin(nx)/n = (π - x)/2.
      const double v = parity == Parity::kCosine ? -std::log(2.0 * std::sin(0.5 * x))
                                                 : 0.5 * (std::numbers::pi - x);
      return ClosedFormValue{scale_ * v, 4e-16 * std::abs(scale_ * v) + 1e-300};
    }
    if (!has_expansion_) return std::nullopt;
    return polylog_expansion(parity, x);
  }

 private:
  // Li_s(e^{ix}) = Γ(1-s)(-ix)^{s-1} + Σ_k ζ(s-k)(ix)^k / k!,  |x| < 2π, s not a positive integer.
  void prepare_closed_form() {
    const double s = beta_;
    if (!(s > 0.0) || std::floor(s) == s) return;
    has_expansion_ = true;
    const double g = std::tgamma(1.0 - s);
    singular_cos_ = g * std::sin(std::numbers::pi * s / 2.0);
    singular_sin_ = g * std::cos(std::numbers::pi * s / 2.0);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      const double arg = s - static_cast<double>(k);
      if (arg > 0.0) {
        coeffs_[k] = zeta(arg) / std::tgamma(static_cast<double>(k) + 1.0);
      } else {
        // ζ(arg)/k! via reflection with Γ(1-arg)/Γ(k+1) kept in log form.
        const double one_minus = 1.0 - arg;
        const double log_mag = arg * std::numbers::ln2 + (arg - 1.0) * std::log(std::numbers::pi) +
                               std::lgamma(one_minus) - std::lgamma(static_cast<double>(k) + 1.0);
        coeffs_[k] = std::exp(log_mag) * std::sin(std::numbers::pi * arg / 2.0) * zeta(one_minus);
      }
    }
  }

  ClosedFormValue polylog_expansion(Parity parity, double x) const {
    const bool cosine = parity == Parity::kCosine;
    const double singular = (cosine ? singular_cos_ : singular_sin_) * std::pow(x, beta_ - 1.0);
    CompensatedSum acc;
    acc += singular;
    double magnitude = std::abs(singular);
    double xk = 1.0;
    double last = 0.0;
    std::size_t k = 0;
    for (; k < coeffs_.size(); ++k, xk *= x) {
      const bool even = k % 2 == 0;
      if (even != cosine) continue;
      // i^k: k even -> (-1)^{k/2}; k odd -> i (-1)^{(k-1)/2}.
      const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
      const double term = sign * coeffs_[k] * xk;
      acc += term;
      magnitude += std::abs(term);
      last = std::abs(term);
      if (k > 8 && last < 1e-18 * magnitude) break;
    }
    const double ratio = x / (2.0 * std::numbers::pi);
    const double truncation = 2.0 * last * ratio * ratio / (1.0 - ratio * ratio);
    const double value = scale_ * acc.value();
    return ClosedFormValue{value, scale_ * (truncation + 8e-16 * magnitude) + 1e-300};
  }

  double beta_;
  double scale_;
  bool has_expansion_ = false;
  double singular_cos_ = 0.0;
  double singular_sin_ = 0.0;
  std::array<double, 160> coeffs_{};
};

// ---------------------------------------------------------------------------------------------

class ZeroModel final : public SequenceModel {
 public:
  SequenceKind kind() const override { return SequenceKind::kRuleBased; }
  std::string name() const override { return "zero"; }
  nlohmann::json describe() const override { return {{"family", "zero"}}; }
  Index horizon() const override { return kMaxIndex; }
  double value(Index) const override { return 0.0; }
  Index run_end(Index) const override { return kMaxIndex; }
  std::optional<Enclosure> range_sum(Index, Index, double, double) const override {
    return Enclosure::exact(0.0);
  }
  std::optional<Enclosure> tail_sum(Index, double, double) const override {
    return Enclosure::exact(0.0);
  }
  std::optional<Enclosure> variation_beyond_horizon() const override {
    return Enclosure::exact(0.0);
  }
  std::optional<DecayEnvelope> envelope(Index) const override { return DecayEnvelope{1.0, 0, 0, 0}; }
  std::optional<ClosedFormValue> series_closed_form(Parity, double) const override {
    return ClosedFormValue{0.0, 0.0};
  }
};

// ---------------------------------------------------------------------------------------------

class ExplicitModel final : public SequenceModel {
 public:
  ExplicitModel(std::vector<double> values, std::string name)
      : values_(std::move(values)), name_(std::move(name)) {}

  SequenceKind kind() const override { return SequenceKind::kExplicit; }
  std::string name() const override { return name_; }
  nlohmann::json describe() const override {
    return {{"family", "explicit"}, {"name", name_}, {"horizon", values_.size()}};
  }
  Index horizon() const override { return values_.size(); }
  double value(Index n) const override { return values_[n - 1]; }
  std::span<const double> dense() const override { return values_; }
  bool finitely_supported() const override { return true; }

  Index run_end(Index n) const override {
    const Index h = horizon();
    if (n >= h) return n;
    const double first_step = values_[n] - values_[n - 1];
    Index e = n + 1;
    while (e < h) {
      const double step = values_[e] - values_[e - 1];
      if ((first_step > 0.0 && step < 0.0) || (first_step < 0.0 && step > 0.0)) break;
      if (first_step == 0.0 && step != 0.0) break;
      ++e;
    }
    return e;
  }

  std::optional<Enclosure> range_sum(Index a, Index b, double s, double q) const override {
    CompensatedSum acc;
    for (Index k = a; k <= b; ++k) {
      const double v = values_[k - 1];
      if (v == 0.0) continue;
      acc += std::pow(static_cast<double>(k), s) * std::pow(v, q);
    }
    return Enclosure::exact(acc.value()).padded(1e-15);
  }
  std::optional<Enclosure> tail_sum(Index m, double s, double q) const override {
    if (m > horizon()) return Enclosure::exact(0.0);
    return range_sum(std::max<Index>(m, 1), horizon(), s, q);
  }
  std::optional<Enclosure> variation_beyond_horizon() const override {
    return Enclosure::exact(values_.empty() ? 0.0 : values_.back());
  }
  std::optional<DecayEnvelope> envelope(Index from) const override {
    if (from > horizon()) return DecayEnvelope{1.0, 0.0, 0.0, 0.0};
    return std::nullopt;
  }

 private:
  std::vector<double> values_;
  std::string name_;
};

// ---------------------------------------------------------------------------------------------
// Counterexample sequence

struct Segment {
  Index first;
  Index last;
  bool linear;  // λ_k = coef · k, otherwise λ_k = coef
  double coef;
};

class LeindlerModel final : public SequenceModel {
 public:
  explicit LeindlerModel(LeindlerParams params) : params_(params), horizon_(params.horizon()) {
    const int top = params_.levels;
    segments_.push_back({1, 15, false, LeindlerParams::head_value()});
    breakpoints_.push_back(15);
    for (int m = 2; m <= top + 1 && m <= 5; ++m) {
      const Index vm = LeindlerParams::v(m);
      if (vm > horizon_) break;
      const double mm = static_cast<double>(m);
      const double lin = std::ldexp(1.0 / (mm * mm), -(LeindlerParams::log2_v(m) +
                                                       LeindlerParams::log2_v(m + 1)));
      const double flat = std::ldexp(1.0 / mm, -LeindlerParams::log2_v(m + 1));
      const Index grow_end = std::min(horizon_, vm * static_cast<Index>(m));
      segments_.push_back({vm, grow_end, true, lin});
      for (Index b : {vm - 1, vm, grow_end}) {
        if (breakpoints_.back() < b) breakpoints_.push_back(b);
      }
      if (grow_end < horizon_) {
        const Index next = m + 1 <= 5 ? LeindlerParams::v(m + 1) - 1 : kMaxIndex;
        const Index flat_end = std::min(horizon_, next);
        segments_.push_back({grow_end + 1, flat_end, false, flat});
      }
    }
    if (breakpoints_.back() < horizon_) breakpoints_.push_back(horizon_);
  }

  SequenceKind kind() const override { return SequenceKind::kRuleBased; }
  std::string name() const override { return "leindler"; }
  nlohmann::json describe() const override {
    return {{"family", "leindler"}, {"levels", params_.levels}, {"horizon", horizon_}};
  }
  Index horizon() const override { return horizon_; }
  double value(Index n) const override { return LeindlerParams::value(n).to_double(); }

  Index run_end(Index n) const override {
    const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), n);
    return it == breakpoints_.end() ? horizon_ : *it;
  }

  std::optional<Enclosure> range_sum(Index a, Index b, double s, double q) const override {
    Enclosure total = Enclosure::exact(0.0);
    for (const auto& seg : segments_) {
      const Index lo = std::max(a, seg.first), hi = std::min(b, seg.last);
      if (lo > hi) continue;
      const double factor = std::pow(seg.coef, q);
      total += power_sum(lo, hi, seg.linear ? s + q : s).scaled(factor);
    }
    return total;
  }

  std::optional<Enclosure> tail_sum(Index m, double s, double q) const override {
    Enclosure inside = Enclosure::exact(0.0);
    if (m <= horizon_) inside = *range_sum(std::max<Index>(m, 1), horizon_, s, q);
    if (horizon_ == kMaxIndex) return inside;
    // Past the horizon every block index exceeds `levels`, so k λ_k <= 1/(levels + 1).
    const auto rest = power_sum_to_infinity(std::max(m, horizon_ + 1), s - q);
    if (!rest) return std::nullopt;
    const double bound = std::pow(1.0 / (params_.levels + 1.0), q) * rest->hi;
    return inside + Enclosure{0.0, bound};
  }

  std::optional<Enclosure> variation_beyond_horizon() const override {
    const int next = std::min(params_.levels + 2, 30);
    const double bound = 3.0 / (params_.levels + 1.0) * std::ldexp(1.0, -LeindlerParams::log2_v(next));
    return Enclosure{0.0, bound};
  }

  std::optional<DecayEnvelope> envelope(Index) const override {
    return DecayEnvelope{1.0, 1.0, 3.0, std::numeric_limits<double>::infinity()};
  }

 private:
  LeindlerParams params_;
  Index horizon_;
  std::vector<Segment> segments_;
  std::vector<Index> breakpoints_;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

// -----------------------------------------------------------------------------------------------

double DyadicRational::to_double() const {
  return std::ldexp(static_cast<double>(numerator) / static_cast<double>(factor), -pow2);
}

Index LeindlerParams::v(int m) {
  if (m < 1 || m > 5) throw ParameterError("v_m is representable only for m in [1, 5]");
  return Index{1} << (1u << m);
}

int LeindlerParams::block_of(Index n) {
  if (n < 4) throw ParameterError("block_of: n must be >= v_1 = 4");
  const int e = std::bit_width(n) - 1;                              // floor(log2 n)
  return std::bit_width(static_cast<unsigned>(e)) - 1;              // floor(log2 e)
}

DyadicRational LeindlerParams::value(Index n) {
  if (n < 4) return {1, 1, 4};
  const int m = block_of(n);
  const Index mm = static_cast<Index>(m);
  const Index vm = Index{1} << (1u << m);
  // m * v_m overflows only for m >= 6, which needs n >= 2^64.
  if (n <= mm * vm) return {n, mm * mm, log2_v(m) + log2_v(m + 1)};
  return {1, mm, log2_v(m + 1)};
}

Index LeindlerParams::horizon() const { return levels >= 5 ? kMaxIndex : v(levels + 1); }

CoefficientSequence gen_power(double beta, double scale) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw ParameterError("gen_power: beta must be >= 0");
  if (!(scale > 0.0) || !std::isfinite(scale)) throw ParameterError("gen_power: scale must be > 0");
  return CoefficientSequence(std::make_shared<PowerModel>(beta, scale));
}

CoefficientSequence gen_zero() { return CoefficientSequence(std::make_shared<ZeroModel>()); }

CoefficientSequence make_explicit(std::vector<double> values, std::string name) {
  if (values.empty()) throw ParameterError("explicit sequence needs at least one value");
  if (values.size() > kMaxDenseLength) {
    throw ParameterError("explicit sequences are limited to " + std::to_string(kMaxDenseLength) +
                         " terms; use a rule-based family");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]) || values[i] < 0.0) {
      throw ParameterError("explicit sequence value at n = " + std::to_string(i + 1) +
                           " must be finite and nonnegative");
    }
  }
  return CoefficientSequence(std::make_shared<ExplicitModel>(std::move(values), std::move(name)));
}

CoefficientSequence gen_leindler(int levels) {
  if (levels < 1 || levels > 5) throw ParameterError("gen_leindler: levels must lie in [1, 5]");
  return CoefficientSequence(std::make_shared<LeindlerModel>(LeindlerParams{levels}));
}

CoefficientSequence parse_sequence_csv(std::istream& in, const std::string& name) {
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string row = trim(line);
    if (row.empty()) continue;
    if (!header_seen) {
      if (row != "n,value") {
        throw LoadError("line " + std::to_string(lineno) + ": expected header 'n,value'");
      }
      header_seen = true;
      continue;
    }
    const auto comma = row.find(',');
    if (comma == std::string::npos || row.find(',', comma + 1) != std::string::npos) {
      throw LoadError("line " + std::to_string(lineno) + ": malformed row '" + row + "'");
    }
    const std::string idx_text = trim(std::string_view(row).substr(0, comma));
    const std::string val_text = trim(std::string_view(row).substr(comma + 1));
    Index idx = 0;
    const auto [iptr, iec] = std::from_chars(idx_text.data(), idx_text.data() + idx_text.size(), idx);
    if (iec != std::errc() || iptr != idx_text.data() + idx_text.size()) {
      throw LoadError("line " + std::to_string(lineno) + ": malformed index '" + idx_text + "'");
    }
    double v = 0.0;
    std::istringstream vs(val_text);
    vs >> v;
    if (!vs || !vs.eof() || !std::isfinite(v)) {
      throw LoadError("line " + std::to_string(lineno) + ": malformed value '" + val_text + "'");
    }
    if (values.empty() && idx != 1) {
      throw LoadError("line " + std::to_string(lineno) + ": indices must start at 1");
    }
    if (idx != values.size() + 1) {
      throw LoadError("line " + std::to_string(lineno) + ": indices must be contiguous (expected " +
                      std::to_string(values.size() + 1) + ", got " + std::to_string(idx) + ")");
    }
    if (v < 0.0) throw LoadError("line " + std::to_string(lineno) + ": nonnegative required");
    if (values.size() >= kMaxDenseLength) {
      throw LoadError("line " + std::to_string(lineno) + ": more than " +
                      std::to_string(kMaxDenseLength) + " rows");
    }
    values.push_back(v);
  }
  if (!header_seen) throw LoadError("line 1: expected header 'n,value'");
  if (values.empty()) throw LoadError("line " + std::to_string(lineno) + ": no data rows");
  return make_explicit(std::move(values), name);
}

CoefficientSequence load_sequence(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open " + path.string());
  return parse_sequence_csv(in, path.filename().string());
}

void write_sequence_csv(const CoefficientSequence& seq, Index max_n, std::ostream& out) {
  if (max_n > kMaxDenseLength) {
    throw ParameterError("--max-n above " + std::to_string(kMaxDenseLength) +
                         " refused; rule-based sequences are not materialized densely");
  }
  if (max_n < 1) throw ParameterError("--max-n must be >= 1");
  const Index last = std::min(max_n, seq.horizon());
  out << "n,value\n";
  std::array<char, 64> buf{};
  for (Index n = 1; n <= last; ++n) {
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), seq.value_at(n));
    out << n << ',' << std::string_view(buf.data(), res.ptr - buf.data()) << '\n';
  }
}

}  // namespace gbv
