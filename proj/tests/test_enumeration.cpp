#include <doctest.h>

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "wccmine/enumeration.hpp"
#include "wccmine/errors.hpp"

using namespace wccmine;

namespace {

ItemSet tech_set(std::vector<std::string> names) {
    std::vector<Item> items;
    for (const std::string& name : names)
        items.emplace_back(Namespace::Tech, name);
    return ItemSet(std::move(items));
}

bool tables_match(const TransactionDatabase& db, const MiningConfig& cfg,
                  int threads = 1) {
    const oracle::Tables expected = oracle::subset_scan(db, cfg);
    const oracle::Tables got =
        oracle::from_frequency_table(count_frequencies(db, cfg, threads));
    return expected.antecedents == got.antecedents &&
           expected.consequents == got.consequents &&
           expected.pairs == got.pairs;
}

} // namespace

TEST_CASE("combi lists every non-empty subset of the worked pair") {
    const ItemSet s = tech_set({"Open Data", "SNS"});
    const std::vector<ItemSet> subs = combi(s);
    REQUIRE(subs.size() == 3);
    const auto has = [&](const ItemSet& wanted) {
        return std::find(subs.begin(), subs.end(), wanted) != subs.end();
    };
    CHECK(has(tech_set({"Open Data"})));
    CHECK(has(tech_set({"SNS"})));
    CHECK(has(tech_set({"Open Data", "SNS"})));
}

TEST_CASE("combi sizes follow 2^m - 1") {
    CHECK(combi(ItemSet{}).empty());
    CHECK(combi(fixtures::gset({"a"})).size() == 1);
    CHECK(combi(fixtures::gset({"a", "b", "c"})).size() == 7);
    CHECK(combi(fixtures::gset({"a", "b", "c", "d", "e"})).size() == 31);
}

TEST_CASE("combi honors the size cap") {
    const ItemSet s = fixtures::gset({"a", "b", "c", "d"});
    CHECK(combi(s, 1).size() == 4);
    CHECK(combi(s, 2).size() == 10);   // C(4,1) + C(4,2)
    CHECK(combi(s, 3).size() == 14);
    CHECK(combi(s, 4).size() == 15);
    CHECK(combi(s, 99).size() == 15);
    for (const ItemSet& sub : combi(s, 2))
        CHECK(sub.size() <= 2);
    CHECK_THROWS_AS(combi(s, 0), UsageError);
}

TEST_CASE("combi subsets are unique members of the source set") {
    const ItemSet s = fixtures::gset({"a", "b", "c", "d"});
    std::vector<ItemSet> subs = combi(s);
    for (const ItemSet& sub : subs) {
        CHECK_FALSE(sub.empty());
        CHECK(s.contains_all(sub));
    }
    std::sort(subs.begin(), subs.end());
    CHECK(std::adjacent_find(subs.begin(), subs.end()) == subs.end());
}

TEST_CASE("combi refuses sets that would blow up memory") {
    std::vector<Item> many;
    for (int i = 0; i < 30; ++i)
        many.push_back(fixtures::gen("m" + std::to_string(i)));
    const ItemSet s(std::move(many));
    CHECK_THROWS_AS(combi(s), UsageError);
    // A tight cap keeps the same set enumerable.
    CHECK(combi(s, 1).size() == 30);
}

TEST_CASE("worked-example counts match the published frequencies") {
    const TransactionDatabase db = fixtures::worked_example();
    const FrequencyTable table = count_frequencies(db, MiningConfig{});
    CHECK(table.n() == 8);
    CHECK(table.antecedent_count(fixtures::gset({"i_A"})) == 4);
    CHECK(table.antecedent_count(fixtures::gset({"i_B"})) == 6);
    CHECK(table.antecedent_count(fixtures::gset({"i_A", "i_B"})) == 3);
    CHECK(table.consequent_count(fixtures::gset({"i_E"})) == 3);
    CHECK(table.consequent_count(fixtures::gset({"i_F"})) == 2);
    CHECK(table.consequent_count(fixtures::gset({"i_G"})) == 7);
    CHECK(table.pair_count(fixtures::gset({"i_A"}), fixtures::gset({"i_G"})) ==
          3);
    // Absent sets count zero.
    CHECK(table.antecedent_count(fixtures::gset({"i_Z"})) == 0);
    CHECK(table.pair_count(fixtures::gset({"i_Z"}),
                           fixtures::gset({"i_G"})) == 0);
}

TEST_CASE("generated rules carry the worked-example frequencies") {
    const TransactionDatabase db = fixtures::worked_example();
    const std::vector<RuleCounts> rules =
        generate_rules(count_frequencies(db, MiningConfig{}));
    const auto find = [&](const ItemSet& x,
                          const ItemSet& y) -> const RuleCounts* {
        for (const RuleCounts& rc : rules)
            if (rc.rule.antecedent() == x && rc.rule.consequent() == y)
                return &rc;
        return nullptr;
    };
    const RuleCounts* ba =
        find(fixtures::gset({"i_B"}), fixtures::gset({"i_A"}));
    REQUIRE(ba != nullptr);
    CHECK(ba->cf_x == 6);
    CHECK(ba->cf_y == 4);
    CHECK(ba->cf_xy == 3);
    const RuleCounts* fa =
        find(fixtures::gset({"i_F"}), fixtures::gset({"i_A"}));
    REQUIRE(fa != nullptr);
    CHECK(fa->cf_x == 2);
    CHECK(fa->cf_y == 4);
    CHECK(fa->cf_xy == 1);
    const RuleCounts* ae =
        find(fixtures::gset({"i_A"}), fixtures::gset({"i_E"}));
    REQUIRE(ae != nullptr);
    CHECK(ae->cf_x == 4);
    CHECK(ae->cf_y == 3);
    CHECK(ae->cf_xy == 3);
    const RuleCounts* ag =
        find(fixtures::gset({"i_A"}), fixtures::gset({"i_G"}));
    REQUIRE(ag != nullptr);
    CHECK(ag->cf_x == 4);
    CHECK(ag->cf_y == 7);
    CHECK(ag->cf_xy == 3);
}

TEST_CASE("generated rules are canonically ordered and consistent") {
    const TransactionDatabase db = fixtures::worked_example();
    const FrequencyTable table = count_frequencies(db, MiningConfig{});
    const std::vector<RuleCounts> rules = generate_rules(table);
    CHECK(!rules.empty());
    for (std::size_t i = 1; i < rules.size(); ++i) {
        const Rule& prev = rules[i - 1].rule;
        const Rule& cur = rules[i].rule;
        CHECK((prev.antecedent() < cur.antecedent() ||
               (prev.antecedent() == cur.antecedent() &&
                prev.consequent() < cur.consequent())));
    }
    for (const RuleCounts& rc : rules) {
        CHECK(rc.cf_xy >= 1);
        CHECK(rc.cf_xy <= rc.cf_x);
        CHECK(rc.cf_xy <= rc.cf_y);
        CHECK(rc.cf_x >= table.min_antecedent_count());
        CHECK(rc.rule.antecedent().disjoint_with(rc.rule.consequent()));
    }
}

TEST_CASE("antecedent counts are monotone under inclusion") {
    const TransactionDatabase db = fixtures::worked_example();
    const FrequencyTable table = count_frequencies(db, MiningConfig{});
    std::vector<std::pair<ItemSet, int>> sets;
    for (const auto& [key, count] : table.antecedent_counts())
        sets.emplace_back(canonical_decode(key), count);
    for (const auto& [small, small_count] : sets)
        for (const auto& [big, big_count] : sets)
            if (big.contains_all(small))
                CHECK(small_count >= big_count);
}

TEST_CASE("counts match the subset-scan oracle on the fixtures") {
    CHECK(tables_match(fixtures::worked_example(), MiningConfig{}));
    CHECK(tables_match(fixtures::two_namespace_example(), MiningConfig{}));

    MiningConfig capped;
    capped.max_antecedent_size = 1;
    capped.max_consequent_size = 2;
    CHECK(tables_match(fixtures::worked_example(), capped));
    CHECK(tables_match(fixtures::two_namespace_example(), capped));

    MiningConfig strict;
    strict.min_antecedent_count = 3;
    strict.min_cooccurrence = 2;
    CHECK(tables_match(fixtures::worked_example(), strict));
    CHECK(tables_match(fixtures::two_namespace_example(), strict));
}

TEST_CASE("counts match the oracle on random databases") {
    std::mt19937_64 rng(20240817);
    for (int round = 0; round < 20; ++round) {
        const TransactionDatabase db = oracle::random_db(rng, round % 2 == 0);
        CHECK(tables_match(db, MiningConfig{}));
    }
}

TEST_CASE("thread count does not change the counts") {
    const TransactionDatabase db = fixtures::worked_example();
    const MiningConfig cfg;
    const oracle::Tables base =
        oracle::from_frequency_table(count_frequencies(db, cfg, 1));
    for (const int threads : {2, 3, 8}) {
        const oracle::Tables other =
            oracle::from_frequency_table(count_frequencies(db, cfg, threads));
        CHECK(base.antecedents == other.antecedents);
        CHECK(base.consequents == other.consequents);
        CHECK(base.pairs == other.pairs);
    }
    std::mt19937_64 rng(7);
    for (int round = 0; round < 6; ++round) {
        const TransactionDatabase rdb = oracle::random_db(rng, round % 2 == 0);
        CHECK(tables_match(rdb, MiningConfig{}, 4));
    }
}

TEST_CASE("the antecedent threshold filters pairs") {
    const TransactionDatabase db = fixtures::worked_example();

    MiningConfig everything;
    everything.min_antecedent_count = 1;
    const FrequencyTable all = count_frequencies(db, everything);
    // {i_A, i_D} occurs once; with threshold 1 it may pair.
    CHECK(all.pair_count(fixtures::gset({"i_A", "i_D"}),
                         fixtures::gset({"i_G"})) == 1);

    const FrequencyTable defaults = count_frequencies(db, MiningConfig{});
    CHECK(defaults.pair_count(fixtures::gset({"i_A", "i_D"}),
                              fixtures::gset({"i_G"})) == 0);

    MiningConfig impossible;
    impossible.min_antecedent_count = static_cast<int>(db.n()) + 1;
    CHECK(generate_rules(count_frequencies(db, impossible)).empty());
}

TEST_CASE("min_cooccurrence drops rare pairs") {
    const TransactionDatabase db = fixtures::worked_example();
    MiningConfig cfg;
    cfg.min_cooccurrence = 3;
    const FrequencyTable table = count_frequencies(db, cfg);
    CHECK(table.pair_count(fixtures::gset({"i_A"}),
                           fixtures::gset({"i_G"})) == 3);
    // {i_F} => {i_A} co-occurs once and is filtered.
    CHECK(table.pair_count(fixtures::gset({"i_F"}),
                           fixtures::gset({"i_A"})) == 0);
    for (const auto& [key, count] : table.pair_counts())
        CHECK(count >= 3);
}

TEST_CASE("size caps bound emitted itemsets") {
    const TransactionDatabase db = fixtures::worked_example();
    MiningConfig cfg;
    cfg.max_antecedent_size = 1;
    cfg.max_consequent_size = 1;
    const FrequencyTable table = count_frequencies(db, cfg);
    for (const auto& [key, count] : table.pair_counts()) {
        const auto [x, y] = decode_pair(key);
        CHECK(x.size() == 1);
        CHECK(y.size() == 1);
    }
    CHECK(table.antecedent_count(fixtures::gset({"i_A", "i_B"})) == 0);
}

TEST_CASE("generic pairs never share items") {
    const TransactionDatabase db = fixtures::worked_example();
    MiningConfig cfg;
    cfg.min_antecedent_count = 1;
    for (const auto& [key, count] :
         count_frequencies(db, cfg).pair_counts()) {
        const auto [x, y] = decode_pair(key);
        CHECK(x.disjoint_with(y));
    }
}

TEST_CASE("two-namespace sides are counted independently") {
    using namespace wccmine;
    // The same label in both namespaces stays distinct.
    std::vector<Transaction> txs;
    const ItemSet ix{Item(Namespace::Issue, "X")};
    const ItemSet tx{Item(Namespace::Tech, "X")};
    txs.emplace_back("r1", ix, tx);
    txs.emplace_back("r2", ix, tx);
    const TransactionDatabase db(std::move(txs));
    const FrequencyTable table = count_frequencies(db, MiningConfig{});
    CHECK(table.antecedent_count(ix) == 2);
    CHECK(table.antecedent_count(tx) == 0);
    CHECK(table.consequent_count(tx) == 2);
    // Equal names in different namespaces are disjoint, so the pair exists.
    CHECK(table.pair_count(ix, tx) == 2);
}

TEST_CASE("the pair budget fails loudly naming the transaction") {
    const TransactionDatabase db = fixtures::worked_example();
    MiningConfig cfg;
    cfg.pair_budget = 3;
    try {
        count_frequencies(db, cfg);
        FAIL("budget not enforced");
    } catch (const BudgetExceededError& e) {
        const std::string what = e.what();
        CHECK(what.find("t1") != std::string::npos);
        CHECK(what.find("3") != std::string::npos);
    }
    cfg.pair_budget = 10'000'000;
    CHECK_NOTHROW(count_frequencies(db, cfg));
}

TEST_CASE("bad configurations and empty databases are rejected") {
    const TransactionDatabase db = fixtures::worked_example();
    MiningConfig bad;
    bad.min_antecedent_count = 0;
    CHECK_THROWS_AS(count_frequencies(db, bad), UsageError);
    MiningConfig neg;
    neg.min_cooccurrence = -1;
    CHECK_THROWS_AS(count_frequencies(db, neg), UsageError);
    CHECK_THROWS_AS(count_frequencies(db, MiningConfig{}, 0), UsageError);
    const TransactionDatabase empty{std::vector<Transaction>{}};
    CHECK_THROWS_AS(count_frequencies(empty, MiningConfig{}), UsageError);
}

TEST_CASE("pair keys decode back to their itemsets") {
    const ItemSet x = fixtures::gset({"i_A", "i_B"});
    const ItemSet y = fixtures::gset({"i_G"});
    const auto [dx, dy] = decode_pair(encode_pair(x, y));
    CHECK(dx == x);
    CHECK(dy == y);
    CHECK(encode_pair(x, y) != encode_pair(y, x));
}
