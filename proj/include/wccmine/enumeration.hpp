#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "wccmine/item.hpp"
#include "wccmine/rule.hpp"
#include "wccmine/transaction.hpp"

namespace wccmine {

struct MiningConfig {
    // Minimum cf(X) an antecedent needs before it may pair with consequents.
    int min_antecedent_count = 2;
    // Minimum cf(X u Y) an emitted pair needs; 0 keeps every observed pair.
    int min_cooccurrence = 0;
    std::optional<int> max_antecedent_size;
    std::optional<int> max_consequent_size;
    // Cap on total enumeration work, measured as the sum over transactions
    // of candidate subsets plus candidate subset pairs (before thresholds).
    // Exceeding it raises BudgetExceededError naming the transaction.
    std::optional<std::uint64_t> pair_budget;

    void validate() const;
};

// Frequencies produced by the counting pass. Keys are canonical itemset
// encodings; absent keys count as zero.
class FrequencyTable {
public:
    FrequencyTable(std::unordered_map<std::string, int> antecedents,
                   std::unordered_map<std::string, int> consequents,
                   std::unordered_map<std::string, int> pairs,
                   std::size_t n, int min_antecedent_count);

    std::size_t n() const { return n_; }
    int min_antecedent_count() const { return min_antecedent_count_; }

    int antecedent_count(const ItemSet& x) const;
    int consequent_count(const ItemSet& y) const;
    int pair_count(const ItemSet& x, const ItemSet& y) const;

    const std::unordered_map<std::string, int>& antecedent_counts() const {
        return antecedents_;
    }
    const std::unordered_map<std::string, int>& consequent_counts() const {
        return consequents_;
    }
    const std::unordered_map<std::string, int>& pair_counts() const {
        return pairs_;
    }

private:
    std::unordered_map<std::string, int> antecedents_;
    std::unordered_map<std::string, int> consequents_;
    std::unordered_map<std::string, int> pairs_;
    std::size_t n_;
    int min_antecedent_count_;
};

// Key joining two canonical itemset encodings; decode_pair inverts it.
std::string encode_pair(const ItemSet& x, const ItemSet& y);
std::pair<ItemSet, ItemSet> decode_pair(std::string_view key);

// All non-empty subsets of s in a deterministic order, optionally capped
// by subset size. A set of m items yields 2^m - 1 subsets when uncapped.
std::vector<ItemSet> combi(const ItemSet& s,
                           std::optional<int> max_size = std::nullopt);

// Two-pass counting: per-side subset frequencies first, then co-occurring
// pairs restricted to antecedents with cf(X) >= min_antecedent_count. In
// generic mode the two sides of a pair must be disjoint. Shards the
// transactions across threads and merges counts by summation, so results
// are identical for every thread count.
FrequencyTable count_frequencies(const TransactionDatabase& db,
                                 const MiningConfig& cfg, int threads = 1);

struct RuleCounts {
    Rule rule;
    int cf_x;
    int cf_y;
    int cf_xy;
};

// Materializes the counted pairs as rules in canonical order
// (antecedent, then consequent).
std::vector<RuleCounts> generate_rules(const FrequencyTable& table);

} // namespace wccmine
