#include "wccmine/transaction.hpp"

#include <unordered_set>
#include <utility>

#include "wccmine/errors.hpp"

namespace wccmine {

namespace {

void require_namespace(const ItemSet& s, Namespace ns, const char* side) {
    if (!s.empty() && s.ns() != ns)
        throw DataError(std::string(side) + " items must be in the '" +
                        std::string(to_string(ns)) + "' namespace");
}

} // namespace

Transaction::Transaction(std::string id, ItemSet issues, ItemSet techs)
    : id_(std::move(id)), generic_(false), antecedent_(std::move(issues)),
      consequent_(std::move(techs)) {
    if (id_.empty())
        throw DataError("empty transaction id");
    require_namespace(antecedent_, Namespace::Issue, "issue");
    require_namespace(consequent_, Namespace::Tech, "tech");
}

Transaction::Transaction(std::string id, ItemSet generic_items)
    : id_(std::move(id)), generic_(true), antecedent_(std::move(generic_items)) {
    if (id_.empty())
        throw DataError("empty transaction id");
    require_namespace(antecedent_, Namespace::Generic, "generic");
}

TransactionDatabase::TransactionDatabase(std::vector<Transaction> transactions)
    : transactions_(std::move(transactions)) {
    std::unordered_set<std::string> ids;
    for (const Transaction& t : transactions_) {
        if (!ids.insert(t.id()).second)
            throw DataError("duplicate transaction id '" + t.id() + "'");
        if (t.generic() != transactions_.front().generic())
            throw DataError("database mixes generic and two-namespace "
                            "transactions");
    }
    generic_ = !transactions_.empty() && transactions_.front().generic();
}

} // namespace wccmine
