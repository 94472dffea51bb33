#pragma once

#include <cstddef>
#include <vector>

#include "wccmine/enumeration.hpp"
#include "wccmine/rule.hpp"

namespace wccmine {

// Plain confidence cf(X u Y) / cf(X). Undefined when cf(X) = 0.
double conf(const RuleFrequencies& f);

// Conservative confidence: the lower credible bound on P(Y | X) from
// cf(X u Y) successes in cf(X) trials.
double conf_lower(const RuleFrequencies& f, const MeasureConfig& cfg);

// Casual confidence: the mean of the conservative estimates of P(Y | X)
// and P(not-Y | not-X). The second estimate uses the complement counts;
// when no transaction misses X it degenerates to the n = 0 bound alpha.
double casual_conf(const RuleFrequencies& f, const MeasureConfig& cfg);

// Weighted casual confidence: (w * P(Y | X) + (2 - w) * P(not-Y | not-X)) / 2
// with both probabilities estimated conservatively. w = 1 recovers
// casual_conf exactly.
double wcc(const RuleFrequencies& f, const MeasureConfig& cfg);

// Dispatch by measure tag.
double score(Measure m, const RuleFrequencies& f, const MeasureConfig& cfg);

// Scores every rule under each requested measure. n is the database size
// the counts came from.
std::vector<ScoredRule> score_rules(const std::vector<RuleCounts>& counts,
                                    std::size_t n, const MeasureConfig& cfg,
                                    const std::vector<Measure>& measures);

} // namespace wccmine
