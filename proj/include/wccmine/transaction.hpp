#pragma once

#include <string>
#include <vector>

#include "wccmine/item.hpp"

namespace wccmine {

// One respondent's answer. In two-namespace mode a transaction carries the
// chosen issues and the chosen technologies separately; in generic mode it
// carries one undifferentiated item set that serves as both rule sides.
class Transaction {
public:
    Transaction(std::string id, ItemSet issues, ItemSet techs);
    Transaction(std::string id, ItemSet generic_items);

    const std::string& id() const { return id_; }
    bool generic() const { return generic_; }

    const ItemSet& antecedent_side() const { return antecedent_; }
    const ItemSet& consequent_side() const {
        return generic_ ? antecedent_ : consequent_;
    }

private:
    std::string id_;
    bool generic_;
    ItemSet antecedent_;
    ItemSet consequent_;
};

// An immutable list of transactions with unique ids, all in the same mode.
class TransactionDatabase {
public:
    explicit TransactionDatabase(std::vector<Transaction> transactions);

    std::size_t n() const { return transactions_.size(); }
    bool empty() const { return transactions_.empty(); }
    bool generic() const { return generic_; }
    const std::vector<Transaction>& transactions() const { return transactions_; }

private:
    std::vector<Transaction> transactions_;
    bool generic_ = false;
};

} // namespace wccmine
