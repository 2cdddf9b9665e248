#include "scrollbio/biography/importance.h"

#include <algorithm>
#include <cmath>

namespace scrollbio::biography {
namespace {

void RequireCount(double v, const char *name) {
  if (!std::isfinite(v) || v < 0)
    throw InvalidArgument(std::string("importance: ") + name + " must be a finite count >= 0");
}

void RequireWeight(double v, const char *name) {
  if (!std::isfinite(v) || v < 0)
    throw InvalidArgument(std::string("scoring config: ") + name + " must be finite and >= 0");
}

template <typename T>
void Read(const nlohmann::json &j, const char *key, T &out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const nlohmann::json::exception &) {
    throw InvalidArgument(std::string("scoring config: bad value for ") + key);
  }
}

}  // namespace

int ScoringConfig::tier_count() const {
  return int(tier_cut_points.empty() ? tier_quantiles.size() : tier_cut_points.size()) + 1;
}

void ScoringConfig::Validate() const {
  RequireWeight(weights.w0, "w0");
  RequireWeight(weights.w1, "w1");
  RequireWeight(weights.w2, "w2");
  RequireWeight(weights.w3, "w3");
  RequireWeight(lambda.l1, "lambda1");
  RequireWeight(lambda.l2, "lambda2");
  RequireWeight(lambda.l3, "lambda3");
  RequireWeight(damping, "damping");
  RequireWeight(r0_none, "r0_none");
  RequireWeight(r0_representative, "r0_representative");
  RequireWeight(r0_pioneer, "r0_pioneer");
  RequireWeight(collector_value, "collector_value");
  RequireWeight(literati_value, "literati_value");
  for (size_t i = 0; i < tier_quantiles.size(); ++i) {
    double q = tier_quantiles[i];
    if (!(q >= 0 && q <= 1)) throw InvalidArgument("scoring config: tier quantile outside [0, 1]");
    if (i > 0 && q > tier_quantiles[i - 1])
      throw InvalidArgument("scoring config: tier quantiles must be descending");
  }
  for (size_t i = 0; i < tier_cut_points.size(); ++i) {
    if (!std::isfinite(tier_cut_points[i]))
      throw InvalidArgument("scoring config: non-finite tier cut point");
    if (i > 0 && tier_cut_points[i] > tier_cut_points[i - 1])
      throw InvalidArgument("scoring config: tier cut points must be descending");
  }
}

nlohmann::json ToJson(const ScoringConfig &c) {
  return {
      {"weights", {c.weights.w0, c.weights.w1, c.weights.w2, c.weights.w3}},
      {"lambda", {c.lambda.l1, c.lambda.l2, c.lambda.l3}},
      {"damping", c.damping},
      {"damped_dynasties", c.damped_dynasties},
      {"r0", {{"none", c.r0_none}, {"representative", c.r0_representative}, {"pioneer", c.r0_pioneer}}},
      {"collector_value", c.collector_value},
      {"literati_value", c.literati_value},
      {"tier_quantiles", c.tier_quantiles},
      {"tier_cut_points", c.tier_cut_points},
  };
}

ScoringConfig ScoringConfigFromJson(const nlohmann::json &j) {
  if (!j.is_object()) throw InvalidArgument("scoring config: expected an object");
  ScoringConfig c;
  std::vector<double> w;
  Read(j, "weights", w);
  if (j.contains("weights")) {
    if (w.size() != 4) throw InvalidArgument("scoring config: weights needs 4 values");
    c.weights = {w[0], w[1], w[2], w[3]};
  }
  std::vector<double> l;
  Read(j, "lambda", l);
  if (j.contains("lambda")) {
    if (l.size() != 3) throw InvalidArgument("scoring config: lambda needs 3 values");
    c.lambda = {l[0], l[1], l[2]};
  }
  Read(j, "damping", c.damping);
  Read(j, "damped_dynasties", c.damped_dynasties);
  if (j.contains("r0")) {
    const auto &r0 = j.at("r0");
    if (!r0.is_object()) throw InvalidArgument("scoring config: r0 must be an object");
    Read(r0, "none", c.r0_none);
    Read(r0, "representative", c.r0_representative);
    Read(r0, "pioneer", c.r0_pioneer);
  }
  Read(j, "collector_value", c.collector_value);
  Read(j, "literati_value", c.literati_value);
  Read(j, "tier_quantiles", c.tier_quantiles);
  Read(j, "tier_cut_points", c.tier_cut_points);
  c.Validate();
  return c;
}

double PaintingRelevance(const ImportanceInputs &in, const ScoringConfig &config) {
  RequireCount(in.r0, "r0");
  RequireCount(in.r1, "r1");
  RequireCount(in.r2, "r2");
  RequireCount(in.r3, "r3");
  const auto &w = config.weights;
  double f = in.dynasty && config.damped_dynasties.count(*in.dynasty) ? config.damping : 1.0;
  return w.w0 * in.r0 + f * (w.w1 * std::log1p(in.r1) + w.w2 * std::log1p(in.r2) +
                             w.w3 * std::log1p(in.r3));
}

double DiscussionDegree(double d) {
  RequireCount(d, "d");
  return std::log1p(d);
}

double IdentityScore(const std::vector<IdentityHolding> &identities, const ScoringConfig &config) {
  bool collector = false, literati = false;
  std::optional<int> official;
  for (const auto &h : identities) {
    switch (h.kind) {
      case Identity::kCollector:
        collector = true;
        break;
      case Identity::kLiterati:
        literati = true;
        break;
      case Identity::kOfficial:
        if (h.rank < 0 || h.rank > 20)
          throw InvalidArgument("importance: official rank " + std::to_string(h.rank) +
                                " outside [0, 20]");
        official = std::max(official.value_or(0), h.rank);
        break;
    }
  }
  return (collector ? config.collector_value : 0) + (literati ? config.literati_value : 0) +
         official.value_or(0);
}

double Importance(double r, double d, double i, const Lambda &lambda) {
  return lambda.l1 * r + lambda.l2 * d + lambda.l3 * i;
}

Score ScoreFigure(const ImportanceInputs &in, const ScoringConfig &config) {
  Score s;
  s.r = PaintingRelevance(in, config);
  s.d = DiscussionDegree(in.d);
  s.i = IdentityScore(in.identities, config);
  s.s = Importance(s.r, s.d, s.i, config.lambda);
  return s;
}

ImportanceInputs InputsFor(const corpus::Corpus &corpus, const std::string &person_id,
                           const ScoringConfig &config) {
  const auto &p = corpus.person(person_id);
  ImportanceInputs in;
  switch (p.school_role) {
    case SchoolRole::kNone:
      in.r0 = config.r0_none;
      break;
    case SchoolRole::kRepresentative:
      in.r0 = config.r0_representative;
      break;
    case SchoolRole::kPioneer:
      in.r0 = config.r0_pioneer;
      break;
  }
  in.r1 = double(corpus.PaintingsBy(person_id).size());
  in.r2 = double(corpus.AppreciationsReceived(person_id));
  in.r3 = double(corpus.PaintingsMarkedBy(person_id).size());
  in.d = double(p.literature_mentions);
  in.identities = p.identities;
  in.dynasty = p.dynasty;
  return in;
}

double Quantile(std::vector<double> values, double q) {
  if (values.empty()) throw InvalidArgument("quantile of an empty set");
  std::sort(values.begin(), values.end());
  double pos = q * double(values.size() - 1);
  auto lo = size_t(std::floor(pos));
  size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - double(lo)) * (values[hi] - values[lo]);
}

std::vector<int> AssignTiers(const std::vector<double> &scores, const ScoringConfig &config) {
  std::vector<double> cuts = config.tier_cut_points;
  if (cuts.empty() && !scores.empty())
    for (double q : config.tier_quantiles) cuts.push_back(Quantile(scores, q));
  std::vector<int> out;
  out.reserve(scores.size());
  for (double s : scores) {
    int tier = 1;
    for (double c : cuts) {
      if (s >= c) break;
      ++tier;
    }
    out.push_back(tier);
  }
  return out;
}

}  // namespace scrollbio::biography
