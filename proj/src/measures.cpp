#include "wccmine/measures.hpp"

#include "wccmine/beta_stats.hpp"
#include "wccmine/errors.hpp"

namespace wccmine {

namespace {

// Lower credible bound on P(Y | X): cf(X u Y) successes in cf(X) trials.
double positive_bound(const RuleFrequencies& f, const MeasureConfig& cfg) {
    return lower_credible_bound({f.cf_xy(), f.cf_x(), cfg.alpha});
}

// Lower credible bound on P(not-Y | not-X): cf(not-X u not-Y) successes in
// cf(not-X) trials. With cf(not-X) = 0 this is the n = 0 bound alpha.
double negative_bound(const RuleFrequencies& f, const MeasureConfig& cfg) {
    return lower_credible_bound({f.cf_not_x_not_y(), f.cf_not_x(), cfg.alpha});
}

} // namespace

double conf(const RuleFrequencies& f) {
    if (f.cf_x() == 0)
        throw UsageError("undefined confidence: cf(X) = 0");
    return static_cast<double>(f.cf_xy()) / static_cast<double>(f.cf_x());
}

double conf_lower(const RuleFrequencies& f, const MeasureConfig& cfg) {
    cfg.validate();
    if (f.cf_x() == 0)
        throw UsageError("undefined confidence: cf(X) = 0");
    return positive_bound(f, cfg);
}

double casual_conf(const RuleFrequencies& f, const MeasureConfig& cfg) {
    cfg.validate();
    if (f.cf_x() == 0)
        throw UsageError("undefined confidence: cf(X) = 0");
    return 0.5 * (positive_bound(f, cfg) + negative_bound(f, cfg));
}

double wcc(const RuleFrequencies& f, const MeasureConfig& cfg) {
    cfg.validate();
    if (f.cf_x() == 0)
        throw UsageError("undefined confidence: cf(X) = 0");
    // With w = 1 both weights are exactly 1.0, so this reproduces
    // casual_conf bit for bit.
    return 0.5 * (cfg.w * positive_bound(f, cfg) +
                  (2.0 - cfg.w) * negative_bound(f, cfg));
}

double score(Measure m, const RuleFrequencies& f, const MeasureConfig& cfg) {
    switch (m) {
    case Measure::Conf: return conf(f);
    case Measure::ConfLower: return conf_lower(f, cfg);
    case Measure::CasualConf: return casual_conf(f, cfg);
    case Measure::Wcc: return wcc(f, cfg);
    }
    throw UsageError("invalid measure value");
}

std::vector<ScoredRule> score_rules(const std::vector<RuleCounts>& counts,
                                    std::size_t n, const MeasureConfig& cfg,
                                    const std::vector<Measure>& measures) {
    cfg.validate();
    if (measures.empty())
        throw UsageError("score_rules: no measures requested");
    std::vector<ScoredRule> out;
    out.reserve(counts.size());
    for (const RuleCounts& rc : counts) {
        RuleFrequencies freq(rc.cf_x, rc.cf_y, rc.cf_xy, static_cast<int>(n));
        std::map<Measure, double> scores;
        for (Measure m : measures)
            scores[m] = score(m, freq, cfg);
        out.push_back(ScoredRule{rc.rule, freq, std::move(scores)});
    }
    return out;
}

} // namespace wccmine
