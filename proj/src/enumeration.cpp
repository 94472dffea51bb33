#include "wccmine/enumeration.hpp"

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <utility>

#include "wccmine/errors.hpp"

namespace wccmine {

namespace {

// Joins two canonical itemset encodings. Distinct from the separators used
// inside a single encoding, so the pair key stays injective.
constexpr char kPairSep = '\x1e';

// Hard cap on the subsets materialized for one side of one transaction.
// Real blowups should be caught by MiningConfig::pair_budget; this guard
// only prevents an unbounded allocation.
constexpr std::uint64_t kCombiCapacity = std::uint64_t{1} << 24;

constexpr std::uint64_t kSaturated = UINT64_MAX;

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    return a > kSaturated - b ? kSaturated : a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0)
        return 0;
    return a > kSaturated / b ? kSaturated : a * b;
}

// Number of non-empty subsets of an m-element set with at most cap
// elements, saturating at UINT64_MAX.
std::uint64_t capped_subset_count(std::size_t m, std::optional<int> cap) {
    if (!cap || static_cast<std::size_t>(*cap) >= m) {
        if (m >= 64)
            return kSaturated;
        return (std::uint64_t{1} << m) - 1;
    }
    std::uint64_t total = 0;
    std::uint64_t binom = 1;
    for (int j = 1; j <= *cap; ++j) {
        const unsigned __int128 next =
            static_cast<unsigned __int128>(binom) * (m - j + 1) / j;
        if (next > kSaturated)
            return kSaturated;
        binom = static_cast<std::uint64_t>(next);
        total = sat_add(total, binom);
    }
    return total;
}

// Walks the transactions in contiguous shards, one thread per shard. A
// single shard runs inline on the calling thread.
template <typename Fn>
void run_sharded(std::size_t count, int shards, Fn&& fn) {
    if (shards <= 1) {
        fn(0, std::size_t{0}, count);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(shards);
    pool.reserve(shards);
    for (int s = 0; s < shards; ++s) {
        const std::size_t begin = count * s / shards;
        const std::size_t end = count * (s + 1) / shards;
        pool.emplace_back([&fn, &errors, s, begin, end] {
            try {
                fn(s, begin, end);
            } catch (...) {
                errors[s] = std::current_exception();
            }
        });
    }
    for (std::thread& t : pool)
        t.join();
    for (const std::exception_ptr& e : errors)
        if (e)
            std::rethrow_exception(e);
}

using CountMap = std::unordered_map<std::string, int>;

// Summation merge; commutative, so the result is independent of shard
// count and order.
CountMap merge_counts(std::vector<CountMap>& shards) {
    CountMap out;
    for (CountMap& shard : shards) {
        for (auto& [key, count] : shard)
            out[key] += count;
        shard.clear();
    }
    return out;
}

void enforce_budget(const TransactionDatabase& db, const MiningConfig& cfg) {
    if (!cfg.pair_budget)
        return;
    std::uint64_t used = 0;
    for (const Transaction& t : db.transactions()) {
        const std::uint64_t sa = capped_subset_count(
            t.antecedent_side().size(), cfg.max_antecedent_size);
        const std::uint64_t sc = capped_subset_count(
            t.consequent_side().size(), cfg.max_consequent_size);
        used = sat_add(used, sat_add(sat_add(sa, sc), sat_mul(sa, sc)));
        if (used > *cfg.pair_budget)
            throw BudgetExceededError(
                "pair budget " + std::to_string(*cfg.pair_budget) +
                " exceeded at transaction '" + t.id() + "'");
    }
}

struct KeyedSet {
    ItemSet set;
    std::string key;
};

std::vector<KeyedSet> keyed_subsets(const ItemSet& s, std::optional<int> cap) {
    std::vector<ItemSet> subsets = combi(s, cap);
    std::vector<KeyedSet> out;
    out.reserve(subsets.size());
    for (ItemSet& subset : subsets) {
        std::string key = canonical_encode(subset);
        out.push_back(KeyedSet{std::move(subset), std::move(key)});
    }
    return out;
}

} // namespace

void MiningConfig::validate() const {
    if (min_antecedent_count < 1)
        throw UsageError("min_antecedent_count must be >= 1");
    if (min_cooccurrence < 0)
        throw UsageError("min_cooccurrence must be >= 0");
    if (max_antecedent_size && *max_antecedent_size < 1)
        throw UsageError("max_antecedent_size must be >= 1");
    if (max_consequent_size && *max_consequent_size < 1)
        throw UsageError("max_consequent_size must be >= 1");
}

FrequencyTable::FrequencyTable(std::unordered_map<std::string, int> antecedents,
                               std::unordered_map<std::string, int> consequents,
                               std::unordered_map<std::string, int> pairs,
                               std::size_t n, int min_antecedent_count)
    : antecedents_(std::move(antecedents)), consequents_(std::move(consequents)),
      pairs_(std::move(pairs)), n_(n),
      min_antecedent_count_(min_antecedent_count) {}

int FrequencyTable::antecedent_count(const ItemSet& x) const {
    const auto it = antecedents_.find(canonical_encode(x));
    return it == antecedents_.end() ? 0 : it->second;
}

int FrequencyTable::consequent_count(const ItemSet& y) const {
    const auto it = consequents_.find(canonical_encode(y));
    return it == consequents_.end() ? 0 : it->second;
}

int FrequencyTable::pair_count(const ItemSet& x, const ItemSet& y) const {
    const auto it = pairs_.find(encode_pair(x, y));
    return it == pairs_.end() ? 0 : it->second;
}

std::string encode_pair(const ItemSet& x, const ItemSet& y) {
    std::string key = canonical_encode(x);
    key += kPairSep;
    key += canonical_encode(y);
    return key;
}

std::pair<ItemSet, ItemSet> decode_pair(std::string_view key) {
    const std::size_t pos = key.find(kPairSep);
    if (pos == std::string_view::npos)
        throw DataError("decode_pair: malformed key");
    return {canonical_decode(key.substr(0, pos)),
            canonical_decode(key.substr(pos + 1))};
}

std::vector<ItemSet> combi(const ItemSet& s, std::optional<int> max_size) {
    if (max_size && *max_size < 1)
        throw UsageError("combi: max_size must be >= 1");
    const std::vector<Item>& items = s.items();
    const std::size_t m = items.size();
    const std::uint64_t total = capped_subset_count(m, max_size);
    if (total > kCombiCapacity)
        throw UsageError("combi: subset count exceeds capacity; set a size "
                         "cap or a pair budget");
    std::vector<ItemSet> out;
    if (m == 0)
        return out;
    out.reserve(static_cast<std::size_t>(total));
    if (!max_size || static_cast<std::size_t>(*max_size) >= m) {
        // Items are canonically sorted, so subsets built in index order are
        // canonical too.
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
            std::vector<Item> subset;
            subset.reserve(static_cast<std::size_t>(__builtin_popcountll(mask)));
            for (std::size_t i = 0; i < m; ++i)
                if (mask & (std::uint64_t{1} << i))
                    subset.push_back(items[i]);
            out.push_back(ItemSet::from_canonical(std::move(subset)));
        }
        return out;
    }
    // Size-capped: lexicographic index combinations per subset size.
    const int limit = *max_size;
    std::vector<std::size_t> idx;
    for (int k = 1; k <= limit; ++k) {
        idx.resize(k);
        for (int i = 0; i < k; ++i)
            idx[i] = i;
        while (true) {
            std::vector<Item> subset;
            subset.reserve(k);
            for (std::size_t i : idx)
                subset.push_back(items[i]);
            out.push_back(ItemSet::from_canonical(std::move(subset)));
            int pos = k - 1;
            while (pos >= 0 && idx[pos] == m - k + pos)
                --pos;
            if (pos < 0)
                break;
            ++idx[pos];
            for (int i = pos + 1; i < k; ++i)
                idx[i] = idx[i - 1] + 1;
        }
    }
    return out;
}

FrequencyTable count_frequencies(const TransactionDatabase& db,
                                 const MiningConfig& cfg, int threads) {
    cfg.validate();
    if (threads < 1)
        throw UsageError("count_frequencies: threads must be >= 1");
    if (db.empty())
        throw UsageError("count_frequencies: empty database");
    enforce_budget(db, cfg);

    const std::vector<Transaction>& txs = db.transactions();
    const int shards =
        static_cast<int>(std::min<std::size_t>(threads, txs.size()));
    const bool generic = db.generic();

    std::vector<CountMap> ant_shards(shards);
    std::vector<CountMap> cons_shards(shards);
    run_sharded(txs.size(), shards,
                [&](int shard, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const Transaction& t = txs[i];
            for (const ItemSet& x :
                 combi(t.antecedent_side(), cfg.max_antecedent_size))
                ++ant_shards[shard][canonical_encode(x)];
            for (const ItemSet& y :
                 combi(t.consequent_side(), cfg.max_consequent_size))
                ++cons_shards[shard][canonical_encode(y)];
        }
    });
    CountMap antecedents = merge_counts(ant_shards);
    CountMap consequents = merge_counts(cons_shards);

    std::vector<CountMap> pair_shards(shards);
    run_sharded(txs.size(), shards,
                [&](int shard, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const Transaction& t = txs[i];
            std::vector<KeyedSet> xs =
                keyed_subsets(t.antecedent_side(), cfg.max_antecedent_size);
            std::erase_if(xs, [&](const KeyedSet& x) {
                const auto it = antecedents.find(x.key);
                return it == antecedents.end() ||
                       it->second < cfg.min_antecedent_count;
            });
            if (xs.empty())
                continue;
            const std::vector<KeyedSet> ys =
                keyed_subsets(t.consequent_side(), cfg.max_consequent_size);
            for (const KeyedSet& x : xs) {
                for (const KeyedSet& y : ys) {
                    if (generic && !x.set.disjoint_with(y.set))
                        continue;
                    std::string key = x.key;
                    key += kPairSep;
                    key += y.key;
                    ++pair_shards[shard][std::move(key)];
                }
            }
        }
    });
    CountMap pairs = merge_counts(pair_shards);
    if (cfg.min_cooccurrence > 0)
        std::erase_if(pairs, [&](const auto& entry) {
            return entry.second < cfg.min_cooccurrence;
        });

    return FrequencyTable(std::move(antecedents), std::move(consequents),
                          std::move(pairs), txs.size(),
                          cfg.min_antecedent_count);
}

std::vector<RuleCounts> generate_rules(const FrequencyTable& table) {
    std::vector<RuleCounts> out;
    out.reserve(table.pair_counts().size());
    for (const auto& [key, cf_xy] : table.pair_counts()) {
        auto [x, y] = decode_pair(key);
        const int cf_x = table.antecedent_count(x);
        const int cf_y = table.consequent_count(y);
        out.push_back(
            RuleCounts{Rule(std::move(x), std::move(y)), cf_x, cf_y, cf_xy});
    }
    std::sort(out.begin(), out.end(),
              [](const RuleCounts& l, const RuleCounts& r) {
        if (l.rule.antecedent() != r.rule.antecedent())
            return l.rule.antecedent() < r.rule.antecedent();
        return l.rule.consequent() < r.rule.consequent();
    });
    return out;
}

} // namespace wccmine
