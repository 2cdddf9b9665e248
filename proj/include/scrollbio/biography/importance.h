#ifndef SCROLLBIO_BIOGRAPHY_IMPORTANCE_H_
#define SCROLLBIO_BIOGRAPHY_IMPORTANCE_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "scrollbio/corpus/corpus.h"

namespace scrollbio::biography {

struct RelevanceWeights {
  double w0 = 1, w1 = 1, w2 = 1, w3 = 1;
  bool operator==(const RelevanceWeights &) const = default;
};

struct Lambda {
  double l1 = 1, l2 = 1, l3 = 1;
  bool operator==(const Lambda &) const = default;
};

struct ScoringConfig {
  RelevanceWeights weights;
  Lambda lambda;
  // Multiplies w1..w3 for figures of a damped dynasty.
  double damping = 0.5;
  std::set<std::string> damped_dynasties{"Qing"};
  double r0_none = 0, r0_representative = 5, r0_pioneer = 10;
  double collector_value = 10, literati_value = 10;
  // Tier k+1 starts below the k-th threshold. Quantiles of S over the
  // biography's entries unless absolute cut points are given (descending).
  std::vector<double> tier_quantiles{0.75, 0.5, 0.25};
  std::vector<double> tier_cut_points;

  int tier_count() const;
  // Throws InvalidArgument on non-finite or negative values or unsorted
  // tier thresholds.
  void Validate() const;
  bool operator==(const ScoringConfig &) const = default;
};

nlohmann::json ToJson(const ScoringConfig &c);
// Missing keys keep their defaults. Throws InvalidArgument.
ScoringConfig ScoringConfigFromJson(const nlohmann::json &j);

struct ImportanceInputs {
  // Pioneer/representativeness score.
  double r0 = 0;
  // Paintings authored, times those were appreciated, paintings appreciated.
  double r1 = 0, r2 = 0, r3 = 0;
  // Mentions in ancient literature.
  double d = 0;
  std::vector<IdentityHolding> identities;
  std::optional<std::string> dynasty;
};

// w0 r0 + sum of wi log(1 + ri). Throws InvalidArgument on a negative count.
double PaintingRelevance(const ImportanceInputs &in, const ScoringConfig &config);
// log(1 + d). Throws InvalidArgument on d < 0.
double DiscussionDegree(double d);
// Sum of identity values. Throws InvalidArgument on an official rank
// outside [0, 20]. Holding the same identity twice counts once.
double IdentityScore(const std::vector<IdentityHolding> &identities,
                     const ScoringConfig &config = {});
double Importance(double r, double d, double i, const Lambda &lambda = {});

struct Score {
  double r = 0, d = 0, i = 0, s = 0;
  bool operator==(const Score &) const = default;
};

Score ScoreFigure(const ImportanceInputs &in, const ScoringConfig &config);
// Inputs drawn from the corpus: school role, painting counts and
// appreciations, literature mentions, identities and dynasty.
ImportanceInputs InputsFor(const corpus::Corpus &corpus, const std::string &person_id,
                           const ScoringConfig &config);

// Tiers 1 (highest) .. tier_count() for each score.
std::vector<int> AssignTiers(const std::vector<double> &scores, const ScoringConfig &config);
// Linear-interpolation quantile of unsorted values; q in [0, 1].
double Quantile(std::vector<double> values, double q);

}  // namespace scrollbio::biography

#endif  // SCROLLBIO_BIOGRAPHY_IMPORTANCE_H_
