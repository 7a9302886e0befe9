#include "gbv/sequence.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "gbv/simd.hpp"

namespace gbv {

Index SequenceModel::run_end(Index n) const { return n < horizon() ? n + 1 : n; }

std::optional<Enclosure> SequenceModel::range_sum(Index, Index, double, double) const {
  return std::nullopt;
}

std::optional<Enclosure> SequenceModel::tail_sum(Index, double, double) const {
  return std::nullopt;
}

std::optional<Enclosure> SequenceModel::variation_beyond_horizon() const { return std::nullopt; }

std::optional<DecayEnvelope> SequenceModel::envelope(Index) const { return std::nullopt; }

std::optional<ClosedFormValue> SequenceModel::series_closed_form(Parity, double) const {
  return std::nullopt;
}

CoefficientSequence::CoefficientSequence(std::shared_ptr<const SequenceModel> model)
    : model_(std::move(model)) {
  if (!model_) throw ParameterError("CoefficientSequence: null model");
}

double CoefficientSequence::value_at(Index n) const {
  if (n < 1 || n > model_->horizon()) {
    throw OutOfRangeError("index " + std::to_string(n) + " outside [1, " +
                          std::to_string(model_->horizon()) + "]");
  }
  return model_->value(n);
}

void CoefficientSequence::fill(Index first, std::span<double> out) const {
  if (out.empty()) return;
  const Index last = first + (out.size() - 1);
  if (first < 1 || last > horizon() || last < first) {
    throw OutOfRangeError("fill range outside the sequence horizon");
  }
  const auto dense = model_->dense();
  if (!dense.empty()) {
    std::copy_n(dense.begin() + static_cast<std::ptrdiff_t>(first - 1), out.size(), out.begin());
    return;
  }
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = model_->value(first + i);
}

double CoefficientSequence::variation(Index a, Index b) const {
  if (a < 1 || b < a || b > horizon()) {
    throw OutOfRangeError("variation range [" + std::to_string(a) + ", " + std::to_string(b) +
                          "] outside the sequence horizon");
  }
  if (a == b) return 0.0;
  const auto dense = model_->dense();
  if (!dense.empty()) {
    return simd::abs_diff_sum(dense.subspan(a - 1, b - a + 1));
  }
  constexpr Index kChunk = 4096;
  std::vector<double> buffer;
  CompensatedSum acc;
  Index pos = a;
  while (pos < b) {
    const Index e = std::min(model_->run_end(pos), b);
    if (e > pos + 1) {
      acc += std::abs(model_->value(e) - model_->value(pos));
      pos = e;
      continue;
    }
    // No run structure here: sweep a dense chunk (shares its last point with the next chunk).
    const Index stop = std::min(b, pos + kChunk);
    buffer.resize(stop - pos + 1);
    fill(pos, buffer);
    acc += simd::abs_diff_sum(buffer);
    pos = stop;
  }
  return acc.value();
}

std::optional<Enclosure> CoefficientSequence::variation_to_infinity(Index n) const {
  const Index h = horizon();
  if (n > h) {
    if (model_->finitely_supported()) return Enclosure::exact(0.0);
    return std::nullopt;
  }
  const double inside = variation(std::max<Index>(n, 1), h);
  if (model_->finitely_supported()) return Enclosure::exact(inside + model_->value(h));
  const auto beyond = model_->variation_beyond_horizon();
  if (!beyond) return std::nullopt;
  return Enclosure::exact(inside) + *beyond;
}

}  // namespace gbv
