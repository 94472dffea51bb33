#include "wccmine/rule.hpp"

#include <utility>

#include "wccmine/errors.hpp"

namespace wccmine {

Rule::Rule(ItemSet antecedent, ItemSet consequent)
    : antecedent_(std::move(antecedent)), consequent_(std::move(consequent)) {
    if (antecedent_.empty() || consequent_.empty())
        throw DataError("rule sides must be non-empty");
    if (!antecedent_.disjoint_with(consequent_))
        throw DataError("rule sides must be disjoint");
}

RuleFrequencies::RuleFrequencies(int cf_x, int cf_y, int cf_xy, int n)
    : cf_x_(cf_x), cf_y_(cf_y), cf_xy_(cf_xy), n_(n) {
    if (n_ < 0 || cf_x_ < 0 || cf_y_ < 0 || cf_xy_ < 0)
        throw DataError("rule frequencies must be non-negative");
    if (cf_x_ > n_ || cf_y_ > n_)
        throw DataError("rule frequencies exceed the database size");
    if (cf_xy_ > cf_x_ || cf_xy_ > cf_y_)
        throw DataError("co-occurrence count exceeds a side count");
    if (cf_not_x_not_y() < 0)
        throw DataError("inconsistent rule frequencies");
}

std::string_view to_string(Measure m) {
    switch (m) {
    case Measure::Conf: return "conf";
    case Measure::ConfLower: return "conf_lower";
    case Measure::CasualConf: return "casual_conf";
    case Measure::Wcc: return "wcc";
    }
    throw UsageError("invalid measure value");
}

Measure measure_from_string(std::string_view s) {
    if (s == "conf") return Measure::Conf;
    if (s == "conf_lower") return Measure::ConfLower;
    if (s == "casual_conf") return Measure::CasualConf;
    if (s == "wcc") return Measure::Wcc;
    throw UsageError("unknown measure '" + std::string(s) + "'");
}

void MeasureConfig::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw UsageError("alpha must lie in (0, 1)");
    if (!(w > 0.0 && w < 2.0))
        throw UsageError("w must lie in (0, 2)");
}

} // namespace wccmine
