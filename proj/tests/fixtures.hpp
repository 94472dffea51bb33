#pragma once

// Shared in-memory fixtures and frozen reference values for the tests.

#include <string>
#include <vector>

#include "wccmine/item.hpp"
#include "wccmine/rule.hpp"
#include "wccmine/transaction.hpp"

namespace fixtures {

inline wccmine::Item gen(const std::string& name) {
    return wccmine::Item(wccmine::Namespace::Generic, name);
}

inline wccmine::ItemSet gset(std::vector<std::string> names) {
    std::vector<wccmine::Item> items;
    items.reserve(names.size());
    for (const std::string& name : names)
        items.push_back(gen(name));
    return wccmine::ItemSet(std::move(items));
}

// The 8-transaction worked example over items i_A .. i_G.
inline wccmine::TransactionDatabase worked_example() {
    std::vector<wccmine::Transaction> txs;
    const std::vector<std::pair<std::string, std::vector<std::string>>> rows =
        {{"t1", {"i_A", "i_B", "i_E", "i_F"}},
         {"t2", {"i_A", "i_B", "i_E", "i_G"}},
         {"t3", {"i_A", "i_B", "i_E", "i_G"}},
         {"t4", {"i_A", "i_D", "i_G"}},
         {"t5", {"i_B", "i_C", "i_F", "i_G"}},
         {"t6", {"i_B", "i_C", "i_G"}},
         {"t7", {"i_B", "i_C", "i_G"}},
         {"t8", {"i_C", "i_D", "i_G"}}};
    for (const auto& [id, names] : rows)
        txs.emplace_back(id, gset(names));
    return wccmine::TransactionDatabase(std::move(txs));
}

// A small two-namespace database for oracle comparisons.
inline wccmine::TransactionDatabase two_namespace_example() {
    using namespace wccmine;
    const auto iss = [](std::vector<std::string> names) {
        std::vector<Item> items;
        for (const std::string& name : names)
            items.emplace_back(Namespace::Issue, name);
        return ItemSet(std::move(items));
    };
    const auto tec = [](std::vector<std::string> names) {
        std::vector<Item> items;
        for (const std::string& name : names)
            items.emplace_back(Namespace::Tech, name);
        return ItemSet(std::move(items));
    };
    std::vector<Transaction> txs;
    txs.emplace_back("r1", iss({"Sightseeing", "Traffic"}),
                     tec({"Open Data", "GIS"}));
    txs.emplace_back("r2", iss({"Traffic"}), tec({"GIS", "SNS"}));
    txs.emplace_back("r3", iss({"Sightseeing", "Living"}),
                     tec({"Open Data", "SNS"}));
    txs.emplace_back("r4", iss({"Traffic", "Living"}), tec({"GIS"}));
    txs.emplace_back("r5", iss({"Sightseeing"}), tec({"Open Data"}));
    return TransactionDatabase(std::move(txs));
}

// Frequencies of the four worked-example rules, from the n = 8 database:
// {i_B}=>{i_A}, {i_F}=>{i_A}, {i_A}=>{i_E}, {i_A}=>{i_G}.
inline wccmine::RuleFrequencies freq_b_a() { return {6, 4, 3, 8}; }
inline wccmine::RuleFrequencies freq_f_a() { return {2, 4, 1, 8}; }
inline wccmine::RuleFrequencies freq_a_e() { return {4, 3, 3, 8}; }
inline wccmine::RuleFrequencies freq_a_g() { return {4, 7, 3, 8}; }

// Frozen full-precision reference values, computed independently from the
// Beta(k + 1, n - k + 1) quantile definition (alpha = 0.01, w = 1.6).
namespace frozen {
// lower_credible_bound(k, n, 0.01)
inline constexpr double kBound3of6 = 0.142270377006857;
inline constexpr double kBound1of2 = 0.058903135778195;
inline constexpr double kBound3of4 = 0.222072283384998;
inline constexpr double kBound4of4 = 0.398107170553497;  // 0.01^(1/5)
inline constexpr double kBound0of4 = 0.002008048338574;  // 1 - 0.99^(1/5)
inline constexpr double kBound50of100 = 0.386069207700351;

// casual_conf / wcc of the four rules above.
inline constexpr double kCasualBA = 0.100586756392526;
inline constexpr double kCasualFA = 0.100586756392526;
inline constexpr double kCasualAE = 0.310089726969248;
inline constexpr double kCasualAG = 0.112040165861786;
inline constexpr double kWccBA = 0.125596928761125;
inline constexpr double kWccFA = 0.075576584023928;
inline constexpr double kWccAE = 0.257279260818698;
inline constexpr double kWccAG = 0.178059436375713;

// Spot values of the regularized incomplete beta function.
inline constexpr double kIbeta142at4x4 = 0.009931378628873;
inline constexpr double kIbeta5at2x3 = 0.6875;
inline constexpr double kIbeta7at55x225 = 0.432712252225846;
} // namespace frozen

} // namespace fixtures
