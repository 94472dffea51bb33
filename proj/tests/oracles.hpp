#pragma once

// Test-only reference implementations, deliberately independent of the
// library's counting and numeric code paths: a naive subset-scan frequency
// oracle, an adaptive-quadrature incomplete beta, and a seeded random
// database generator.

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "wccmine/enumeration.hpp"
#include "wccmine/item.hpp"
#include "wccmine/transaction.hpp"

namespace oracle {

// ---------------------------------------------------------------------------
// Adaptive Simpson quadrature.

inline double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_step(const std::function<double(double)>& f, double a,
                            double b, double fa, double fm, double fb,
                            double whole, double eps, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(a, m, fa, flm, fm);
    const double right = simpson(m, b, fm, frm, fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) < 15.0 * eps)
        return left + right + delta / 15.0;
    return adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
           adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a,
                        double b, double eps) {
    if (a == b)
        return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fm = f(m);
    const double fb = f(b);
    return adaptive_step(f, a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), eps,
                         60);
}

// Regularized incomplete beta by direct quadrature of the Beta density.
inline double reg_inc_beta_quadrature(double x, double a, double b) {
    const double log_norm =
        std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b);
    const auto density = [&](double t) {
        if (t <= 0.0 || t >= 1.0)
            return 0.0;
        return std::exp(log_norm + (a - 1.0) * std::log(t) +
                        (b - 1.0) * std::log1p(-t));
    };
    return integrate(density, 0.0, x, 1e-13);
}

// ---------------------------------------------------------------------------
// Naive subset-scan frequency oracle.

struct Tables {
    std::map<wccmine::ItemSet, int> antecedents;
    std::map<wccmine::ItemSet, int> consequents;
    std::map<std::pair<wccmine::ItemSet, wccmine::ItemSet>, int> pairs;
};

inline std::vector<wccmine::ItemSet> all_subsets(const wccmine::ItemSet& s,
                                                 std::optional<int> cap) {
    std::vector<wccmine::ItemSet> out;
    const std::vector<wccmine::Item>& items = s.items();
    const std::size_t m = items.size();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
        if (cap && __builtin_popcountll(mask) > *cap)
            continue;
        std::vector<wccmine::Item> sub;
        for (std::size_t i = 0; i < m; ++i)
            if (mask & (std::uint64_t{1} << i))
                sub.push_back(items[i]);
        out.push_back(wccmine::ItemSet(std::move(sub)));
    }
    return out;
}

// Naive membership by linear search, avoiding the library's set algebra.
inline bool holds_all(const wccmine::ItemSet& side,
                      const wccmine::ItemSet& wanted) {
    for (const wccmine::Item& w : wanted) {
        bool found = false;
        for (const wccmine::Item& have : side)
            if (have == w) {
                found = true;
                break;
            }
        if (!found)
            return false;
    }
    return true;
}

inline bool overlaps(const wccmine::ItemSet& a, const wccmine::ItemSet& b) {
    for (const wccmine::Item& x : a)
        for (const wccmine::Item& y : b)
            if (x == y)
                return true;
    return false;
}

inline Tables subset_scan(const wccmine::TransactionDatabase& db,
                          const wccmine::MiningConfig& cfg) {
    Tables t;
    std::set<wccmine::ItemSet> ant_cands;
    std::set<wccmine::ItemSet> cons_cands;
    for (const wccmine::Transaction& tx : db.transactions()) {
        for (const wccmine::ItemSet& s :
             all_subsets(tx.antecedent_side(), cfg.max_antecedent_size))
            ant_cands.insert(s);
        for (const wccmine::ItemSet& s :
             all_subsets(tx.consequent_side(), cfg.max_consequent_size))
            cons_cands.insert(s);
    }
    for (const wccmine::ItemSet& x : ant_cands) {
        int count = 0;
        for (const wccmine::Transaction& tx : db.transactions())
            count += holds_all(tx.antecedent_side(), x);
        t.antecedents[x] = count;
    }
    for (const wccmine::ItemSet& y : cons_cands) {
        int count = 0;
        for (const wccmine::Transaction& tx : db.transactions())
            count += holds_all(tx.consequent_side(), y);
        t.consequents[y] = count;
    }

    std::set<std::pair<wccmine::ItemSet, wccmine::ItemSet>> pair_cands;
    for (const wccmine::Transaction& tx : db.transactions()) {
        for (const wccmine::ItemSet& x :
             all_subsets(tx.antecedent_side(), cfg.max_antecedent_size)) {
            if (t.antecedents.at(x) < cfg.min_antecedent_count)
                continue;
            for (const wccmine::ItemSet& y :
                 all_subsets(tx.consequent_side(), cfg.max_consequent_size)) {
                if (db.generic() && overlaps(x, y))
                    continue;
                pair_cands.insert({x, y});
            }
        }
    }
    for (const auto& [x, y] : pair_cands) {
        int count = 0;
        for (const wccmine::Transaction& tx : db.transactions())
            count += holds_all(tx.antecedent_side(), x) &&
                     holds_all(tx.consequent_side(), y);
        if (count >= cfg.min_cooccurrence)
            t.pairs[{x, y}] = count;
    }
    return t;
}

// Converts the library's encoded count maps into oracle form for equality
// checks.
inline Tables from_frequency_table(const wccmine::FrequencyTable& table) {
    Tables t;
    for (const auto& [key, count] : table.antecedent_counts())
        t.antecedents[wccmine::canonical_decode(key)] = count;
    for (const auto& [key, count] : table.consequent_counts())
        t.consequents[wccmine::canonical_decode(key)] = count;
    for (const auto& [key, count] : table.pair_counts())
        t.pairs[wccmine::decode_pair(key)] = count;
    return t;
}

// ---------------------------------------------------------------------------
// Seeded random database generator.

inline wccmine::TransactionDatabase random_db(std::mt19937_64& rng,
                                              bool generic) {
    using namespace wccmine;
    const std::size_t n = 1 + rng() % 10;
    std::vector<Transaction> txs;
    txs.reserve(n);
    const auto flip = [&](int percent) {
        return static_cast<int>(rng() % 100) < percent;
    };
    for (std::size_t i = 0; i < n; ++i) {
        const std::string id = "t" + std::to_string(i + 1);
        if (generic) {
            std::vector<Item> items;
            for (int j = 0; j < 8; ++j)
                if (flip(40))
                    items.emplace_back(Namespace::Generic,
                                       "g" + std::to_string(j));
            txs.emplace_back(id, ItemSet(std::move(items)));
        } else {
            std::vector<Item> issues;
            std::vector<Item> techs;
            for (int j = 0; j < 4; ++j) {
                if (flip(45))
                    issues.emplace_back(Namespace::Issue,
                                        "u" + std::to_string(j));
                if (flip(45))
                    techs.emplace_back(Namespace::Tech,
                                       "v" + std::to_string(j));
            }
            txs.emplace_back(id, ItemSet(std::move(issues)),
                             ItemSet(std::move(techs)));
        }
    }
    return wccmine::TransactionDatabase(std::move(txs));
}

} // namespace oracle
